pub mod decomp;
pub mod fischer;
pub mod gf;
pub mod matsuo;
pub mod miyamoto;
pub mod suite;
pub mod transposition;

pub type Gf2 = gf::Gf<1>;
pub type Gf4 = gf::Gf<2>;
pub type Gf8 = gf::Gf<3>;
pub type Gf16 = gf::Gf<4>;
pub type Gf256 = gf::Gf<8>;
