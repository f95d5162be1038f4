//! Exact computer algebra for Oort–Tate group schemes and their full level
//! structures: coefficient rings, polynomials, Groebner bases, Hopf algebras
//! and the level-structure ideals built on top of them.

pub mod arith;
pub mod gro;
pub mod poly;
pub mod hopf;
pub mod ot;
pub mod level;
pub mod ext3;
pub mod km;
