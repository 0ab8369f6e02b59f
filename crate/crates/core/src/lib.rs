//! Symbolic verification engine for the mapping-class calculus of iterated
//! disk sums: word calculus for arcs, twist actions and braid
//! homomorphisms, combinatorial surface models, destabilization complexes
//! over finite group families, integral homology, coefficient-system degree
//! computation, and stability-range arithmetic.

pub mod coeff;
pub mod destab;
pub mod groupoid;
pub mod homology;
pub mod intmat;
pub mod mapclass;
pub mod perm;
pub mod ranges;
pub mod report;
pub mod surface;
pub mod testutil;
