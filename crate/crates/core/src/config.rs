use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;

/// Tunables shared by the height and metric computations.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Config {
    /// Target width of root boxes.
    pub precision: BigRational,
    /// Largest common exponent denominator tried by the ultrametric witness search.
    pub kmax: u32,
    /// Largest Galois closure degree handled exactly.
    pub closure_cap: usize,
    /// Largest degree handed to the integer factorizer.
    pub degree_cap: usize,
}

impl Config {
    pub const DEFAULT_KMAX: u32 = 12;
    pub const DEFAULT_CLOSURE_CAP: usize = 12;
    pub const DEFAULT_DEGREE_CAP: usize = 64;

    pub fn with_precision(mut self, precision: BigRational) -> Self {
        self.precision = precision;
        self
    }
}

/// `2^-bits` as an exact rational.
pub fn pow2_neg(bits: u32) -> BigRational {
    BigRational::new(BigInt::one(), BigInt::one() << bits)
}

impl Default for Config {
    fn default() -> Self {
        Config {
            precision: pow2_neg(60),
            kmax: Self::DEFAULT_KMAX,
            closure_cap: Self::DEFAULT_CLOSURE_CAP,
            degree_cap: Self::DEFAULT_DEGREE_CAP,
        }
    }
}
