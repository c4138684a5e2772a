use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Debug, Parser)]
#[command(name = "anderson-lab", version, about = "Numerical laboratory for the lattice Anderson Hamiltonian")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Sample a Bernoulli field and print its dump
    SamplePotential(Params),
    /// Label the clusters of one color and print a CSV of components
    Clusters(ClusterArgs),
    /// Classify blocks as gray/yellow (and ultra-gray/mixed) and print a CSV
    Coarse(Params),
    /// Count lattice animals and compare with the bounds
    Animals(Params),
    /// Census of all-white blocks in the radial layers
    Clearings(Params),
    /// Inertia counts and smallest eigenvalue of one Hamiltonian
    Spectrum(SpectrumArgs),
    /// Dirichlet-Neumann bracketing over lake partitions
    Bracketing(Params),
    /// Cluster-size tail of the origin against the exponential bound
    Tail(Params),
    /// Yellow-block frequency against the large-deviation bound
    Chernoff(Params),
    /// Scaled ground energy of lake-with-shell domains
    EigScaling(Params),
    /// Negative-eigenvalue counts on nested boxes for a grid of well amplitudes
    Threshold(Params),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ConventionArg {
    Strict,
    Weak,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum BcArg {
    Dirichlet,
    Neumann,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ColorArg {
    White,
    Black,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ConnectivityArg {
    One,
    SqrtD,
}

/// Model and run parameters shared by every subcommand. Unset flags fall
/// back to the config file, then to the subcommand defaults.
#[derive(Debug, Clone, Default, Args)]
pub struct Params {
    /// Dimension (1..=3)
    #[arg(long = "d")]
    pub d: Option<usize>,
    /// Box side
    #[arg(long = "L")]
    pub side: Option<usize>,
    /// Probability of a black site
    #[arg(long = "p")]
    pub p: Option<f64>,
    /// Coupling of the potential
    #[arg(long = "h")]
    pub h: Option<f64>,
    /// Base seed
    #[arg(long = "seed")]
    pub seed: Option<u64>,
    #[arg(long = "trials")]
    pub trials: Option<usize>,
    /// Amplitude of the borderline well
    #[arg(long = "c")]
    pub c: Option<f64>,
    #[arg(long = "c-grid", value_delimiter = ',')]
    pub c_grid: Option<Vec<f64>>,
    #[arg(long = "L-grid", value_delimiter = ',')]
    pub side_grid: Option<Vec<usize>>,
    /// Layer base
    #[arg(long = "a")]
    pub a: Option<u64>,
    #[arg(long = "l-block")]
    pub l_block: Option<usize>,
    /// Number of layers examined by the clearing census
    #[arg(long = "l-max")]
    pub l_max: Option<usize>,
    #[arg(long = "p-star")]
    pub p_star: Option<f64>,
    /// Block sizes for the large-deviation experiment
    #[arg(long = "m-grid", value_delimiter = ',')]
    pub m_grid: Option<Vec<usize>>,
    #[arg(long = "s-max")]
    pub s_max: Option<usize>,
    /// Absolute zero-band half-width
    #[arg(long = "tol")]
    pub tol: Option<f64>,
    #[arg(long = "convention", value_enum)]
    pub convention: Option<ConventionArg>,
    /// Boundary condition on the box edge
    #[arg(long = "bc", value_enum)]
    pub bc: Option<BcArg>,
    /// Replace w by min(h/2, w)
    #[arg(long = "clamp-w")]
    pub clamp_w: bool,
    #[arg(long = "workers", env = "ANDERSON_LAB_WORKERS")]
    pub workers: Option<usize>,
    /// Output directory; utilities print to stdout when absent
    #[arg(long = "out")]
    pub out: Option<PathBuf>,
    /// Also write two-column plot files
    #[arg(long = "emit-plot-data")]
    pub emit_plot_data: bool,
    /// JSON config merged under explicit flags
    #[arg(long = "config")]
    pub config: Option<PathBuf>,
}

#[derive(Debug, Clone, Args)]
pub struct ClusterArgs {
    #[command(flatten)]
    pub params: Params,
    #[arg(long = "color", value_enum, default_value = "white")]
    pub color: ColorArg,
    #[arg(long = "connectivity", value_enum, default_value = "sqrt-d")]
    pub connectivity: ConnectivityArg,
}

#[derive(Debug, Clone, Args)]
pub struct SpectrumArgs {
    #[command(flatten)]
    pub params: Params,
    /// Relative accuracy of the smallest eigenvalue
    #[arg(long = "rel-tol", default_value_t = 1e-10)]
    pub rel_tol: f64,
    /// Also write the matrix in coordinate format to this file
    #[arg(long = "export-matrix")]
    pub export_matrix: Option<PathBuf>,
}
