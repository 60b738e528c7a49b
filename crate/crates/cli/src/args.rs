use clap::{Args, Parser, Subcommand};

use lattice_orbit::OrbitLabel;

#[derive(Debug, Parser)]
#[command(name = "lattice-orbit", version, about = "Orbit labels of primitive vectors in B(2)+U lattices")]
pub struct Cli {
    /// Human-readable output instead of JSON.
    #[arg(long, global = true)]
    pub pretty: bool,

    #[command(subcommand)]
    pub command: Command,
}

/// A comma-separated coordinate list such as `0,0,1,-5`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Coords(pub Vec<i64>);

pub fn parse_coords(s: &str) -> Result<Coords, String> {
    if s.trim().is_empty() {
        return Ok(Coords(Vec::new()));
    }
    s.split(',')
        .map(|p| p.trim().parse::<i64>().map_err(|e| format!("bad coordinate {p:?}: {e}")))
        .collect::<Result<_, _>>()
        .map(Coords)
}

fn parse_label(s: &str) -> Result<OrbitLabel, String> {
    s.parse()
}

#[derive(Debug, Args)]
pub struct VectorArgs {
    /// Built-in lattice name.
    #[arg(long, default_value = "Lminus")]
    pub lattice: String,
    /// Comma-separated coordinates in constructor basis order.
    #[arg(long, value_parser = parse_coords, allow_hyphen_values = true)]
    pub coords: Coords,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Describe a built-in lattice, or list the built-ins.
    Info {
        #[arg(long)]
        lattice: Option<String>,
    },
    /// Orbit label of a primitive vector.
    Classify {
        #[arg(long, default_value = "Lminus")]
        lattice: String,
        #[arg(long, value_parser = parse_coords, allow_hyphen_values = true, required_unless_present_any = ["validate", "vector"])]
        coords: Option<Coords>,
        /// Vector JSON file ("-" for stdin).
        #[arg(long, conflicts_with_all = ["coords", "validate"])]
        vector: Option<String>,
        /// Classification report JSON to recompute and compare ("-" for stdin).
        #[arg(long, conflicts_with = "coords")]
        validate: Option<String>,
    },
    /// Canonical representative of an orbit.
    Rep {
        #[arg(long, default_value = "Lminus")]
        lattice: String,
        /// Full norm 2n.
        #[arg(long, allow_hyphen_values = true, required_unless_present = "n", conflicts_with = "n")]
        norm: Option<i64>,
        /// Half norm n.
        #[arg(long, allow_hyphen_values = true)]
        n: Option<i64>,
        /// odd | characteristic | ordinary (or the full label names).
        #[arg(long = "class", value_parser = parse_label)]
        class: OrbitLabel,
    },
    /// Dilatation image, as doubled coordinates.
    Phi(VectorArgs),
    /// Inverse dilatation.
    PhiInv {
        /// Base lattice of the half vector, e.g. E8U_I11 or U_I11.
        #[arg(long, default_value = "E8U_I11")]
        base: String,
        #[arg(long, value_parser = parse_coords, allow_hyphen_values = true)]
        doubled: Coords,
    },
    /// Even-type test (n even).
    EvenType(VectorArgs),
    /// Search for an even-type witness in E8(2)+U(2).
    Witness {
        #[arg(long, value_parser = parse_coords, allow_hyphen_values = true)]
        coords: Coords,
        #[arg(long, default_value_t = 2)]
        bound: i64,
    },
    /// Component reports for a range of n (or of norms 2n).
    Heegner {
        #[arg(long, allow_hyphen_values = true, requires = "to", required_unless_present = "norm_from")]
        from: Option<i64>,
        #[arg(long, allow_hyphen_values = true)]
        to: Option<i64>,
        #[arg(long, allow_hyphen_values = true, requires = "norm_to", conflicts_with = "from")]
        norm_from: Option<i64>,
        #[arg(long, allow_hyphen_values = true)]
        norm_to: Option<i64>,
    },
    /// Label invariance under sampled isometry words.
    OracleInvariance {
        #[arg(long, default_value = "Lminus")]
        lattice: String,
        #[arg(long, default_value_t = 10_000)]
        samples: usize,
        #[arg(long, default_value_t = 42)]
        seed: u64,
        #[arg(long, default_value_t = 3)]
        bound: i64,
        #[arg(long, default_value_t = 8)]
        word_length: usize,
    },
    /// Primitive vectors of a norm in a coordinate box.
    OracleEnumerate {
        #[arg(long, default_value = "U2U")]
        lattice: String,
        #[arg(long)]
        bound: i64,
        #[arg(long, allow_hyphen_values = true)]
        norm: i64,
    },
    /// Union-find connectivity of a box slice under sampled generators.
    OracleConnectivity {
        #[arg(long, default_value = "U2U")]
        lattice: String,
        #[arg(long, allow_hyphen_values = true)]
        norm: i64,
        #[arg(long, default_value_t = 5)]
        bound: i64,
        #[arg(long, default_value_t = 7)]
        seed: u64,
        #[arg(long, default_value_t = 10_000)]
        walks: usize,
        #[arg(long, default_value_t = 1)]
        word_length: usize,
    },
    /// Wall's congruence over a box of I_{s,t}.
    OracleWall {
        #[arg(long)]
        s: usize,
        #[arg(long)]
        t: usize,
        #[arg(long, default_value_t = 3)]
        bound: i64,
    },
    /// E8 structural anchors, or the count of one norm.
    OracleE8 {
        #[arg(long, allow_hyphen_values = true)]
        norm: Option<i64>,
    },
}
