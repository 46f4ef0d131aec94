use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Debug, Parser)]
#[command(name = "stieltjes", version, about = "Stieltjes constants, Hurwitz zeta and Dirichlet L-values to certified tolerance")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Evaluate one quantity and print it as JSON.
    Compute(ComputeArgs),
    /// Run identity, route-agreement and oracle checks.
    Verify(VerifyArgs),
    /// Record partial sums per outer block and fit their decay ratio.
    Bench(BenchArgs),
}

#[derive(Debug, Clone, Args)]
pub struct PrecisionArgs {
    /// Target absolute error.
    #[arg(long, default_value = "1e-12", allow_hyphen_values = true)]
    pub tol: String,
    /// Working precision in bits.
    #[arg(long = "prec-bits", default_value_t = 256)]
    pub prec_bits: u32,
    /// Significant decimal digits in printed values.
    #[arg(long, default_value_t = 30)]
    pub digits: u32,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Quantity {
    Stieltjes,
    Zeta,
    BrunBeta,
    DirichletL,
    Gamma0Telescope,
    EulerGamma,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum MethodArg {
    Dyadic,
    BaseK,
    PsiTelescope,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Grid {
    Small,
    Full,
}

#[derive(Debug, Clone, Args)]
pub struct ComputeArgs {
    #[arg(long, value_enum)]
    pub quantity: Quantity,
    #[arg(long)]
    pub ell: Option<u32>,
    #[arg(long = "a", allow_hyphen_values = true)]
    pub a: Option<String>,
    #[arg(long = "s", allow_hyphen_values = true)]
    pub s: Option<String>,
    #[arg(long = "k", default_value_t = 2)]
    pub k: u32,
    #[arg(long, value_enum)]
    pub method: Option<MethodArg>,
    /// Modulus of the character given by --chi.
    #[arg(long)]
    pub modulus: Option<u32>,
    /// Character table chi(1),...,chi(m), comma separated.
    #[arg(long, allow_hyphen_values = true)]
    pub chi: Option<String>,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    #[command(flatten)]
    pub precision: PrecisionArgs,
}

#[derive(Debug, Clone, Args)]
pub struct VerifyArgs {
    #[arg(long, value_enum, default_value_t = Grid::Small)]
    pub grid: Grid,
    /// Added to every residual; a harness self-test.
    #[arg(long, allow_hyphen_values = true)]
    pub perturb: Option<String>,
    #[command(flatten)]
    pub precision: PrecisionArgs,
}

#[derive(Debug, Clone, Args)]
pub struct BenchArgs {
    #[arg(long, value_enum, default_value_t = Quantity::Stieltjes)]
    pub quantity: Quantity,
    /// Orders ℓ, comma separated.
    #[arg(long, value_delimiter = ',', default_value = "0")]
    pub ell: Vec<u32>,
    #[arg(long = "a", default_value = "1", allow_hyphen_values = true)]
    pub a: String,
    /// Exponents s for the zeta benchmark, comma separated.
    #[arg(long = "s", value_delimiter = ',', default_value = "2")]
    pub s: Vec<String>,
    /// Bases k, comma separated.
    #[arg(long = "k", value_delimiter = ',', default_value = "2")]
    pub k: Vec<u32>,
    #[arg(long, value_enum, default_value_t = MethodArg::BaseK)]
    pub method: MethodArg,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    pub format: Format,
    #[command(flatten)]
    pub precision: PrecisionArgs,
}
