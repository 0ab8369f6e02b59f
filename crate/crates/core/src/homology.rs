//! Integral chain complexes of semi-simplicial sets and their homology
//! through Smith normal form.

use crate::destab::SemiSimplicialSet;
use crate::intmat::{smith_normal_form, IntMat};
use num_bigint::BigInt;
use num_traits::One;

/// Boundary matrices `d_p: C_p -> C_{p-1}` with `d_p . d_{p+1} = 0`.
/// In reduced mode degree -1 is the augmentation target.
#[derive(Debug, Clone)]
pub struct ChainComplex {
    dims: Vec<usize>,
    /// `boundaries[p]` maps degree `p` down; `boundaries[0]` is the
    /// augmentation row in reduced mode and a 0-row matrix otherwise.
    boundaries: Vec<IntMat>,
    reduced: bool,
}

impl ChainComplex {
    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn boundary(&self, p: usize) -> &IntMat {
        &self.boundaries[p]
    }

    pub fn is_reduced(&self) -> bool {
        self.reduced
    }

    pub fn top_degree(&self) -> usize {
        self.dims.len() - 1
    }

    /// `d . d = 0` in every degree.
    pub fn boundary_squares_to_zero(&self) -> bool {
        (1..self.boundaries.len())
            .all(|p| self.boundaries[p - 1].mul(&self.boundaries[p]).is_zero())
    }
}

/// Simplicial chains of a semi-simplicial set: the boundary is the
/// alternating sum of the face maps.
pub fn chain_complex(w: &SemiSimplicialSet, reduced: bool) -> ChainComplex {
    let top = w.dimensions() - 1;
    let dims: Vec<usize> = (0..=top).map(|p| w.simplex_count(p)).collect();
    let mut boundaries = Vec::with_capacity(top + 1);
    let aug_rows = if reduced { 1 } else { 0 };
    let mut aug = IntMat::zero(aug_rows, dims[0]);
    if reduced {
        for c in 0..dims[0] {
            aug.set(0, c, BigInt::one());
        }
    }
    boundaries.push(aug);
    for p in 1..=top {
        let mut m = IntMat::zero(dims[p - 1], dims[p]);
        for s in 0..dims[p] {
            for i in 0..=p {
                let target = w.face(p, i, s);
                let sign = if i % 2 == 0 { BigInt::one() } else { -BigInt::one() };
                let cur = m.get(target, s) + sign;
                m.set(target, s, cur);
            }
        }
        boundaries.push(m);
    }
    let cc = ChainComplex { dims, boundaries, reduced };
    assert!(cc.boundary_squares_to_zero(), "face maps do not square to zero");
    cc
}

/// Free rank and torsion coefficients in one degree.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DegreeSummary {
    pub degree: usize,
    pub betti: usize,
    pub torsion: Vec<BigInt>,
}

/// Per-degree homology plus the largest degree `c` such that (reduced)
/// homology vanishes in all degrees `<= c`. The bound is homological:
/// fundamental-group information is not computed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HomologySummary {
    pub reduced: bool,
    pub degrees: Vec<DegreeSummary>,
    pub connectivity_homological: i64,
}

pub fn homology(cc: &ChainComplex) -> HomologySummary {
    let top = cc.top_degree();
    let snfs: Vec<_> = (0..=top).map(|p| smith_normal_form(cc.boundary(p))).collect();
    let mut degrees = Vec::with_capacity(top + 1);
    for p in 0..=top {
        let rank_out = snfs[p].rank;
        let rank_in = if p < top { snfs[p + 1].rank } else { 0 };
        let betti = cc.dims()[p] - rank_out - rank_in;
        let torsion: Vec<BigInt> = if p < top {
            snfs[p + 1]
                .factors
                .iter()
                .filter(|f| !f.is_one())
                .cloned()
                .collect()
        } else {
            Vec::new()
        };
        degrees.push(DegreeSummary { degree: p, betti, torsion });
    }
    let mut connectivity: i64 = -1;
    for d in &degrees {
        if d.betti == 0 && d.torsion.is_empty() {
            connectivity = d.degree as i64;
        } else {
            break;
        }
    }
    HomologySummary { reduced: cc.is_reduced(), degrees, connectivity_homological: connectivity }
}

/// Alternating sum of the simplex counts; in reduced mode the empty simplex
/// contributes -1.
pub fn euler_characteristic(cc: &ChainComplex) -> i64 {
    let mut chi: i64 = if cc.is_reduced() { -1 } else { 0 };
    for (p, &d) in cc.dims().iter().enumerate() {
        chi += if p % 2 == 0 { d as i64 } else { -(d as i64) };
    }
    chi
}

/// Alternating sum of the Betti numbers of `summary`, with the reduced
/// degree -1 contribution when applicable.
pub fn euler_from_betti(summary: &HomologySummary) -> i64 {
    // the augmentation makes reduced H_{-1} vanish on nonempty complexes
    summary
        .degrees
        .iter()
        .map(|d| {
            if d.degree % 2 == 0 {
                d.betti as i64
            } else {
                -(d.betti as i64)
            }
        })
        .sum()
}
