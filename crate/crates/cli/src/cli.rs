use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Parser, Debug)]
#[command(name = "sumrules", version, about = "Dipole sum rules: exact ladders against brute-force spectra")]
#[command(args_override_self = true)]
pub struct Cli {
    /// key=value file; command-line flags override it.
    #[arg(long, global = true, value_name = "FILE")]
    pub config: Option<String>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Discrete, continuum and exact values per order and channel.
    Table(TableArgs),
    /// Run a verification suite.
    Verify(VerifyArgs),
    /// One squared dipole matrix element.
    Matrix(MatrixArgs),
    /// Residuals of the generalized Kramers identity and the Kramers recurrence.
    Kramers(KramersArgs),
    /// Solver diagnostics for a numerically solved state.
    Potential(PotentialArgs),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Text,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum ChannelArg {
    Plus,
    Minus,
    Total,
    /// Every open channel, plus the total when there are two.
    All,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Suite {
    PaperTables,
    Identities,
    Equivalences,
    Contour,
    All,
}

/// Hydrogen state (`--state`) or solved potential state (`--potential`, `--nodes`, `--l`).
#[derive(Args, Debug, Clone)]
pub struct StateArgs {
    /// Hydrogen state such as `1s`, `2p`, `3d` or `n,l`.
    #[arg(long)]
    pub state: Option<String>,
    /// `coulomb`, `log` or `gamma=<p/q>`.
    #[arg(long)]
    pub potential: Option<String>,
    #[arg(long)]
    pub nodes: Option<u32>,
    #[arg(long)]
    pub l: Option<u32>,
}

#[derive(Args, Debug)]
pub struct TableArgs {
    #[command(flatten)]
    pub state: StateArgs,
    /// Inclusive order range `A..B`, or a single order.
    #[arg(long, allow_hyphen_values = true, default_value = "0..3")]
    pub orders: String,
    #[arg(long, value_enum, default_value = "all")]
    pub channel: ChannelArg,
    #[arg(long, default_value_t = 2000)]
    pub nmax: u32,
    #[arg(long, default_value_t = 2e-4)]
    pub tol: f64,
    /// Target levels summed for a solved potential.
    #[arg(long, default_value_t = 12)]
    pub levels: u32,
    #[arg(long, value_enum, default_value = "text")]
    pub format: Format,
}

#[derive(Args, Debug)]
pub struct VerifyArgs {
    #[arg(long, value_enum, default_value = "all")]
    pub suite: Suite,
    #[arg(long, default_value_t = 2e-4)]
    pub tol: f64,
    #[arg(long, default_value_t = 2000)]
    pub nmax: u32,
    #[arg(long, value_enum, default_value = "text")]
    pub format: Format,
}

#[derive(Args, Debug)]
pub struct MatrixArgs {
    #[command(flatten)]
    pub state: StateArgs,
    /// Principal quantum number of the bound target.
    #[arg(long, conflicts_with = "q")]
    pub to: Option<u32>,
    /// Continuum wavenumber of the target.
    #[arg(long)]
    pub q: Option<f64>,
    #[arg(long, value_enum, default_value = "plus")]
    pub channel: ChannelArg,
    #[arg(long, value_enum, default_value = "text")]
    pub format: Format,
}

#[derive(Args, Debug)]
pub struct KramersArgs {
    #[command(flatten)]
    pub state: StateArgs,
    /// Residual threshold for numerically solved states.
    #[arg(long, default_value_t = 1e-5)]
    pub tol: f64,
    #[arg(long, value_enum, default_value = "text")]
    pub format: Format,
}

#[derive(Args, Debug)]
pub struct PotentialArgs {
    #[command(flatten)]
    pub state: StateArgs,
    #[arg(long, default_value_t = 1e-5)]
    pub tol: f64,
    #[arg(long, value_enum, default_value = "text")]
    pub format: Format,
}
