//! Closed-form stability ranges for disk stabilization, twisted
//! coefficients, and the connectivity bound of the arc complex. All
//! fractional bounds are reported as floors; an upper bound below zero means
//! the range is empty.

use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq, Clone)]
pub enum RangeError {
    #[error("twisted ranges require n > N, got n = {n}, N = {big_n}")]
    OutOfValidity { n: i64, big_n: i64 },
    #[error("unknown coefficient kind `{0}`")]
    UnknownKind(String),
}

/// Floor division for possibly negative numerators and positive divisors.
fn floor_div(a: i64, b: i64) -> i64 {
    a.div_euclid(b)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MapKind {
    /// Adds a boundary component at the same genus.
    Boundary,
    /// Trades a boundary component for a genus increase.
    Genus,
    /// One disk stabilization step.
    DiskStabilization,
}

impl MapKind {
    pub fn label(&self) -> &'static str {
        match self {
            MapKind::Boundary => "boundary",
            MapKind::Genus => "genus",
            MapKind::DiskStabilization => "disk",
        }
    }
}

/// Epimorphism and isomorphism bounds for one stabilization map; the map is
/// an epimorphism for `i <= epi` and an isomorphism for `i <= iso`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RangeResult {
    pub kind: MapKind,
    pub epi: i64,
    pub iso: i64,
    /// The boundary map is injective in every degree.
    pub always_injective: bool,
}

impl RangeResult {
    fn new(kind: MapKind, epi: i64, iso: i64, always_injective: bool) -> RangeResult {
        debug_assert!(iso <= epi);
        RangeResult { kind, epi, iso, always_injective }
    }
}

/// Constant-coefficient ranges for the two maps at genus `g`: the boundary
/// map is injective and an isomorphism for `i <= 2g/3`; the genus map is an
/// epimorphism for `i <= (2g+1)/3` and an isomorphism for `i <= (2g-2)/3`.
pub fn range_theorem_a(g: i64) -> (RangeResult, RangeResult) {
    assert!(g >= 0);
    let boundary = RangeResult::new(
        MapKind::Boundary,
        floor_div(2 * g, 3),
        floor_div(2 * g, 3),
        true,
    );
    let genus = RangeResult::new(
        MapKind::Genus,
        floor_div(2 * g + 1, 3),
        floor_div(2 * g - 2, 3),
        false,
    );
    (boundary, genus)
}

/// Twisted ranges at genus `g` for a coefficient system of degree `k`; in
/// the split case `3k` improves to `k` in every bound.
pub fn range_theorem_b(g: i64, k: i64, split: bool) -> (RangeResult, RangeResult) {
    assert!(g >= 0 && k >= 0);
    let kk = if split { k } else { 3 * k };
    let boundary = RangeResult::new(
        MapKind::Boundary,
        floor_div(2 * g - kk - 2, 3),
        floor_div(2 * g - kk - 5, 3),
        false,
    );
    let genus = RangeResult::new(
        MapKind::Genus,
        floor_div(2 * g - kk - 1, 3),
        floor_div(2 * g - kk - 4, 3),
        false,
    );
    (boundary, genus)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CoefficientKind {
    Constant,
    Degree,
    SplitDegree,
}

impl CoefficientKind {
    pub fn parse(text: &str) -> Result<CoefficientKind, RangeError> {
        match text {
            "constant" => Ok(CoefficientKind::Constant),
            "degree" => Ok(CoefficientKind::Degree),
            "split-degree" | "split" => Ok(CoefficientKind::SplitDegree),
            other => Err(RangeError::UnknownKind(other.into())),
        }
    }

    pub fn label(&self) -> &'static str {
        match self {
            CoefficientKind::Constant => "constant",
            CoefficientKind::Degree => "degree",
            CoefficientKind::SplitDegree => "split-degree",
        }
    }
}

/// Ranges for the single disk-stabilization step out of `n` disks.
pub fn range_stab(
    n: i64,
    k: i64,
    big_n: i64,
    kind: CoefficientKind,
) -> Result<RangeResult, RangeError> {
    assert!(n >= 0 && k >= 0);
    let (epi, iso) = match kind {
        CoefficientKind::Constant => (floor_div(n, 3), floor_div(n - 3, 3)),
        CoefficientKind::Degree => {
            if n <= big_n {
                return Err(RangeError::OutOfValidity { n, big_n });
            }
            (floor_div(n - 3 * k - 2, 3), floor_div(n - 3 * k - 5, 3))
        }
        CoefficientKind::SplitDegree => {
            if n <= big_n {
                return Err(RangeError::OutOfValidity { n, big_n });
            }
            (floor_div(n - k - 2, 3), floor_div(n - k - 5, 3))
        }
    };
    Ok(RangeResult::new(MapKind::DiskStabilization, epi, iso, false))
}

/// Connectivity bound of the disordered arc complex at genus `g` with the
/// marks on `nu` boundary components.
pub fn connectivity_bound(g: i64, nu: u8) -> i64 {
    assert!(g >= 0 && (nu == 1 || nu == 2));
    floor_div(2 * g + nu as i64 - 5, 3)
}

/// The sampled range table frozen in the golden file: every theorem over a
/// parameter grid, one line per entry.
pub fn render_range_table() -> String {
    let mut out = String::new();
    out.push_str("# theorem A: boundary(epi iso inj) genus(epi iso)\n");
    for g in 0..=12 {
        let (b, ge) = range_theorem_a(g);
        out.push_str(&format!(
            "A g={g} boundary epi={} iso={} injective={} genus epi={} iso={}\n",
            b.epi, b.iso, b.always_injective, ge.epi, ge.iso
        ));
    }
    out.push_str("# theorem B over g, k, split\n");
    for g in 0..=12 {
        for k in 0..=3 {
            for split in [false, true] {
                let (b, ge) = range_theorem_b(g, k, split);
                out.push_str(&format!(
                    "B g={g} k={k} split={split} boundary epi={} iso={} genus epi={} iso={}\n",
                    b.epi, b.iso, ge.epi, ge.iso
                ));
            }
        }
    }
    out.push_str("# disk stabilization\n");
    for n in 0..=24 {
        let r = range_stab(n, 0, 0, CoefficientKind::Constant).unwrap();
        out.push_str(&format!("stab n={n} constant epi={} iso={}\n", r.epi, r.iso));
    }
    for kind in [CoefficientKind::Degree, CoefficientKind::SplitDegree] {
        for k in 0..=3 {
            for n in 1..=24 {
                let r = range_stab(n, k, 0, kind).unwrap();
                out.push_str(&format!(
                    "stab n={n} k={k} {} epi={} iso={}\n",
                    kind.label(),
                    r.epi,
                    r.iso
                ));
            }
        }
    }
    out.push_str("# connectivity bound\n");
    for g in 0..=10 {
        for nu in [1u8, 2] {
            out.push_str(&format!(
                "connectivity g={g} nu={nu} bound={}\n",
                connectivity_bound(g, nu)
            ));
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn theorem_a_values() {
        let (b, g) = range_theorem_a(3);
        assert_eq!(b.iso, 2);
        assert_eq!(g.epi, 2);
        assert_eq!(g.iso, 1);
        let (_, g0) = range_theorem_a(0);
        assert!(g0.iso < 0, "empty isomorphism range at genus zero");
        let (b10, _) = range_theorem_a(10);
        assert_eq!(b10.iso, 6);
    }

    #[test]
    fn theorem_b_values() {
        let (b, _) = range_theorem_b(6, 1, false);
        assert_eq!(b.epi, 2);
        assert_eq!(b.iso, 1);
        let (b, _) = range_theorem_b(6, 1, true);
        assert_eq!(b.epi, 3);
        assert_eq!(b.iso, 2);
    }

    #[test]
    fn stab_values() {
        let r = range_stab(9, 0, 0, CoefficientKind::Constant).unwrap();
        assert_eq!((r.epi, r.iso), (3, 2));
        let r = range_stab(12, 1, 0, CoefficientKind::Degree).unwrap();
        assert_eq!((r.epi, r.iso), (2, 1));
        let r = range_stab(12, 1, 0, CoefficientKind::SplitDegree).unwrap();
        assert_eq!((r.epi, r.iso), (3, 2));
        assert_eq!(
            range_stab(3, 1, 5, CoefficientKind::Degree),
            Err(RangeError::OutOfValidity { n: 3, big_n: 5 })
        );
    }

    #[test]
    fn connectivity_values() {
        assert_eq!(connectivity_bound(1, 2), -1);
        assert_eq!(connectivity_bound(0, 1), -2);
        assert_eq!(connectivity_bound(4, 1), 1);
    }

    #[test]
    fn composed_genus_stabilization_ranges() {
        // composing boundary then genus map gives epi <= 2g/3 and
        // iso <= (2g-2)/3
        for g in 0..=50 {
            let (b, ge) = range_theorem_a(g);
            let epi = b.iso.min(ge.epi);
            let iso = b.iso.min(ge.iso);
            assert_eq!(epi, floor_div(2 * g, 3));
            assert_eq!(iso, floor_div(2 * g - 2, 3));
        }
    }

    #[test]
    fn monotone_in_genus_and_degree() {
        for g in 0..30 {
            for k in 0..4 {
                for split in [false, true] {
                    let (b, ge) = range_theorem_b(g, k, split);
                    let (b2, ge2) = range_theorem_b(g + 1, k, split);
                    assert!(b2.epi >= b.epi && ge2.iso >= ge.iso);
                    let (b3, _) = range_theorem_b(g, k + 1, split);
                    assert!(b3.epi <= b.epi);
                }
            }
        }
    }

    #[test]
    fn stab_translates_to_theorem_b() {
        // one disk out of 2g disks is the boundary map, out of 2g + 1 the
        // genus map
        for g in 1..=12i64 {
            for k in 0..=3i64 {
                let (b, ge) = range_theorem_b(g, k, false);
                let s1 = range_stab(2 * g, k, 0, CoefficientKind::Degree).unwrap();
                assert_eq!((s1.epi, s1.iso), (b.epi, b.iso));
                let s2 = range_stab(2 * g + 1, k, 0, CoefficientKind::Degree).unwrap();
                assert_eq!((s2.epi, s2.iso), (ge.epi, ge.iso));
            }
        }
    }
}
