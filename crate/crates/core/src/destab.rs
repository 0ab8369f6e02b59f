//! Destabilization complexes for families of finite permutation groups with
//! Yang-Baxter data: cosets of the stabilized subgroups form the simplices
//! and the face maps twist by block-braid words in the Yang-Baxter elements.

use crate::perm::{closure, homomorphism_map, Perm};
use std::collections::HashMap;
use std::fmt::Write as _;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq, Clone)]
pub enum FamilyError {
    #[error("parse error at line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("validation failed at level {level}: {axiom}")]
    Validation { level: usize, axiom: String },
    #[error("semi-simplicial identity violated: {0}")]
    IdentityViolation(String),
    #[error("level {level} exceeds the group order cap of {cap}")]
    ResourceLimit { level: usize, cap: usize },
    #[error("build needs level {level}, family has {levels}")]
    LevelOutOfRange { level: usize, levels: usize },
    #[error("invalid build parameters: {0}")]
    BadParameters(String),
}

#[derive(Debug, Clone, Copy)]
pub struct FamilyOptions {
    pub max_group_order: usize,
}

impl Default for FamilyOptions {
    fn default() -> FamilyOptions {
        FamilyOptions { max_group_order: 1_000_000 }
    }
}

/// Raw data for one group level before validation.
#[derive(Debug, Clone, Default)]
pub struct LevelData {
    pub degree: usize,
    pub gens: Vec<Perm>,
    /// Images in the next level of this level's generators, in order.
    pub inj_images: Vec<Perm>,
    /// Yang-Baxter elements `t_{n,1} .. t_{n,n-1}`.
    pub yb: Vec<Perm>,
}

/// A validated stability family `G_0 .. G_N` with injections and
/// Yang-Baxter elements.
#[derive(Debug, Clone)]
pub struct StabilityFamily {
    levels: Vec<LevelData>,
    elements: Vec<Vec<Perm>>,
    /// `inj_map[n]` evaluates the injection out of level `n`.
    inj_map: Vec<HashMap<Perm, Perm>>,
}

impl StabilityFamily {
    /// Validate every axiom eagerly: group orders under the cap, injective
    /// homomorphisms, compatibility of the Yang-Baxter elements with the
    /// injections, and the braid relations.
    pub fn new(levels: Vec<LevelData>, opts: &FamilyOptions) -> Result<StabilityFamily, FamilyError> {
        assert!(!levels.is_empty());
        let mut elements = Vec::with_capacity(levels.len());
        for (n, level) in levels.iter().enumerate() {
            let elems = closure(level.degree, &level.gens, opts.max_group_order)
                .map_err(|_| FamilyError::ResourceLimit { level: n, cap: opts.max_group_order })?;
            let elem_set: std::collections::HashSet<&Perm> = elems.iter().collect();
            for (j, t) in level.yb.iter().enumerate() {
                if !elem_set.contains(t) {
                    return Err(FamilyError::Validation {
                        level: n,
                        axiom: format!("yb element t_{} is not in the group", j + 1),
                    });
                }
            }
            elements.push(elems);
        }
        // braid relations among the yb elements of each level
        for (n, level) in levels.iter().enumerate() {
            let t = &level.yb;
            for j in 0..t.len().saturating_sub(1) {
                let lhs = t[j].compose(&t[j + 1]).compose(&t[j]);
                let rhs = t[j + 1].compose(&t[j]).compose(&t[j + 1]);
                if lhs != rhs {
                    return Err(FamilyError::Validation {
                        level: n,
                        axiom: format!("braid relation fails at t_{} t_{}", j + 1, j + 2),
                    });
                }
            }
            for j in 0..t.len() {
                for j2 in j + 2..t.len() {
                    if t[j].compose(&t[j2]) != t[j2].compose(&t[j]) {
                        return Err(FamilyError::Validation {
                            level: n,
                            axiom: format!("t_{} and t_{} do not commute", j + 1, j2 + 1),
                        });
                    }
                }
            }
        }
        // injections: well-defined, injective, compatible with the yb data
        let mut inj_map = Vec::new();
        for n in 0..levels.len() - 1 {
            let level = &levels[n];
            let next = &levels[n + 1];
            if level.inj_images.len() != level.gens.len() {
                return Err(FamilyError::Validation {
                    level: n,
                    axiom: format!(
                        "{} generators but {} injection images",
                        level.gens.len(),
                        level.inj_images.len()
                    ),
                });
            }
            let pairs: Vec<(Perm, Perm)> = level
                .gens
                .iter()
                .cloned()
                .zip(level.inj_images.iter().cloned())
                .collect();
            let map = if pairs.is_empty() {
                HashMap::from([(Perm::identity(level.degree), Perm::identity(next.degree))])
            } else {
                homomorphism_map(&pairs, elements[n].len(), opts.max_group_order)
                    .map_err(|axiom| FamilyError::Validation { level: n, axiom })?
            };
            for (j, t) in level.yb.iter().enumerate() {
                let image = map.get(t).ok_or_else(|| FamilyError::Validation {
                    level: n,
                    axiom: format!("yb element t_{} not reachable through the injection", j + 1),
                })?;
                if next.yb.get(j) != Some(image) {
                    return Err(FamilyError::Validation {
                        level: n,
                        axiom: format!("injection does not carry t_{} to the next level", j + 1),
                    });
                }
            }
            inj_map.push(map);
        }
        Ok(StabilityFamily { levels, elements, inj_map })
    }

    pub fn level_count(&self) -> usize {
        self.levels.len()
    }

    pub fn order(&self, level: usize) -> usize {
        self.elements[level].len()
    }

    pub fn elements(&self, level: usize) -> &[Perm] {
        &self.elements[level]
    }

    pub fn yb(&self, level: usize) -> &[Perm] {
        &self.levels[level].yb
    }

    /// Image in level `to` of the whole group at level `from`.
    fn pushed_elements(&self, from: usize, to: usize) -> Vec<Perm> {
        let mut out = self.elements[from].to_vec();
        for n in from..to {
            out = out
                .into_iter()
                .map(|g| self.inj_map[n][&g].clone())
                .collect();
        }
        out
    }

    /// Images in level `to` of the generators at level `from`.
    fn pushed_generators(&self, from: usize, to: usize) -> Vec<Perm> {
        let mut out = self.levels[from].gens.to_vec();
        for n in from..to {
            out = out
                .into_iter()
                .map(|g| self.inj_map[n][&g].clone())
                .collect();
        }
        out
    }
}

/// The symmetric groups with adjacent transpositions as Yang-Baxter data.
pub fn symmetric_family(n_max: u32) -> StabilityFamily {
    symmetric_like_family(n_max, false)
}

/// The symmetric groups with the identity as Yang-Baxter element; the braid
/// relations hold trivially and every face map of a dimension coincides.
pub fn symmetric_identity_family(n_max: u32) -> StabilityFamily {
    symmetric_like_family(n_max, true)
}

fn symmetric_like_family(n_max: u32, identity_yb: bool) -> StabilityFamily {
    assert!(n_max >= 2);
    let levels: Vec<LevelData> = (0..=n_max as usize)
        .map(|n| {
            let degree = n;
            let gens: Vec<Perm> = (1..n)
                .map(|i| Perm::from_cycles(degree, &[vec![i, i + 1]]))
                .collect();
            let inj_images: Vec<Perm> = if n < n_max as usize {
                gens.iter().map(|g| g.extend(n + 1)).collect()
            } else {
                Vec::new()
            };
            let yb: Vec<Perm> = (1..n)
                .map(|j| {
                    if identity_yb {
                        Perm::identity(degree)
                    } else {
                        Perm::from_cycles(degree, &[vec![j, j + 1]])
                    }
                })
                .collect();
            LevelData { degree, gens, inj_images, yb }
        })
        .collect();
    StabilityFamily::new(levels, &FamilyOptions::default()).expect("symmetric family validates")
}

/// A constant family with trivial groups.
pub fn trivial_family(n_max: u32) -> StabilityFamily {
    let levels: Vec<LevelData> = (0..=n_max as usize)
        .map(|n| LevelData {
            degree: 1,
            gens: Vec::new(),
            inj_images: Vec::new(),
            yb: vec![Perm::identity(1); n.saturating_sub(1)],
        })
        .collect();
    StabilityFamily::new(levels, &FamilyOptions::default()).expect("trivial family validates")
}

/// A constant cyclic family: every level is generated by one 3-cycle, which
/// is also every Yang-Baxter element.
pub fn cyclic_family(n_max: u32) -> StabilityFamily {
    let c = Perm::from_cycles(3, &[vec![1, 2, 3]]);
    let levels: Vec<LevelData> = (0..=n_max as usize)
        .map(|n| LevelData {
            degree: 3,
            gens: vec![c.clone()],
            inj_images: if n < n_max as usize { vec![c.clone()] } else { Vec::new() },
            yb: vec![c.clone(); n.saturating_sub(1)],
        })
        .collect();
    StabilityFamily::new(levels, &FamilyOptions::default()).expect("cyclic family validates")
}

/// Parse the line-oriented family file format:
///
/// ```text
/// level 2
/// gens: (1 2)
/// inj: (1 2) -> (1 2)
/// yb 1: (1 2)
/// ```
///
/// Permutations use cycle notation on 1-based points; `#` starts a comment.
pub fn load_family(text: &str, opts: &FamilyOptions) -> Result<StabilityFamily, FamilyError> {
    struct RawLevel {
        gens: Vec<String>,
        inj: Vec<(String, String)>,
        yb: Vec<(usize, String)>,
    }
    let mut raw: Vec<RawLevel> = Vec::new();
    for (lineno, line) in text.lines().enumerate() {
        let line_number = lineno + 1;
        let line = line.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let err = |message: String| FamilyError::Parse { line: line_number, message };
        if let Some(rest) = line.strip_prefix("level") {
            let n: usize = rest
                .trim()
                .parse()
                .map_err(|_| err(format!("bad level number `{}`", rest.trim())))?;
            if n != raw.len() {
                return Err(err(format!("expected `level {}`, found `level {n}`", raw.len())));
            }
            raw.push(RawLevel { gens: Vec::new(), inj: Vec::new(), yb: Vec::new() });
            continue;
        }
        let current = raw
            .last_mut()
            .ok_or_else(|| err("directive before the first `level` line".into()))?;
        if let Some(rest) = line.strip_prefix("gens:") {
            for tok in split_perm_list(rest) {
                current.gens.push(tok);
            }
        } else if let Some(rest) = line.strip_prefix("inj:") {
            let (lhs, rhs) = rest
                .split_once("->")
                .ok_or_else(|| err("inj line needs `lhs -> rhs`".into()))?;
            current.inj.push((lhs.trim().to_string(), rhs.trim().to_string()));
        } else if let Some(rest) = line.strip_prefix("yb") {
            let (j, perm) = rest
                .split_once(':')
                .ok_or_else(|| err("yb line needs `yb j: (..)`".into()))?;
            let j: usize = j
                .trim()
                .parse()
                .map_err(|_| err(format!("bad yb index `{}`", j.trim())))?;
            current.yb.push((j, perm.trim().to_string()));
        } else {
            return Err(err(format!("unrecognized directive `{line}`")));
        }
    }
    if raw.is_empty() {
        return Err(FamilyError::Parse { line: 0, message: "no levels in file".into() });
    }

    // degrees: every permutation written at a level must fit
    let mut degrees = vec![0usize; raw.len()];
    for (n, level) in raw.iter().enumerate() {
        let mut d = 0;
        for g in &level.gens {
            d = d.max(Perm::max_point_in(g));
        }
        for (lhs, _) in &level.inj {
            d = d.max(Perm::max_point_in(lhs));
        }
        for (_, t) in &level.yb {
            d = d.max(Perm::max_point_in(t));
        }
        degrees[n] = degrees[n].max(d);
        if n + 1 < raw.len() {
            for (_, rhs) in &level.inj {
                degrees[n + 1] = degrees[n + 1].max(Perm::max_point_in(rhs));
            }
        }
    }

    let mut levels = Vec::with_capacity(raw.len());
    for (n, level) in raw.iter().enumerate() {
        let degree = degrees[n];
        let parse = |text: &str, degree: usize| {
            Perm::parse(text, degree).map_err(|e| FamilyError::Parse { line: 0, message: e.to_string() })
        };
        let gens: Vec<Perm> = level
            .gens
            .iter()
            .map(|g| parse(g, degree))
            .collect::<Result<_, _>>()?;
        let mut inj_images = vec![None; gens.len()];
        for (lhs, rhs) in &level.inj {
            let lhs = parse(lhs, degree)?;
            let pos = gens.iter().position(|g| *g == lhs).ok_or(FamilyError::Parse {
                line: 0,
                message: format!("inj left side `{lhs}` is not a generator of level {n}"),
            })?;
            let next_degree = degrees.get(n + 1).copied().unwrap_or(0);
            inj_images[pos] = Some(parse(rhs, next_degree)?);
        }
        let inj_images: Vec<Perm> = if n + 1 < raw.len() {
            inj_images
                .into_iter()
                .enumerate()
                .map(|(i, img)| {
                    img.ok_or(FamilyError::Parse {
                        line: 0,
                        message: format!("level {n} generator {} has no injection image", i + 1),
                    })
                })
                .collect::<Result<_, _>>()?
        } else {
            Vec::new()
        };
        let mut yb = vec![None; level.yb.iter().map(|(j, _)| *j).max().unwrap_or(0)];
        for (j, t) in &level.yb {
            if *j == 0 || *j > yb.len() {
                return Err(FamilyError::Parse {
                    line: 0,
                    message: format!("yb index {j} out of range at level {n}"),
                });
            }
            yb[*j - 1] = Some(parse(t, degree)?);
        }
        let yb: Vec<Perm> = yb
            .into_iter()
            .enumerate()
            .map(|(j, t)| {
                t.ok_or(FamilyError::Parse {
                    line: 0,
                    message: format!("missing yb {} at level {n}", j + 1),
                })
            })
            .collect::<Result<_, _>>()?;
        levels.push(LevelData { degree, gens, inj_images, yb });
    }
    StabilityFamily::new(levels, opts)
}

fn split_perm_list(text: &str) -> Vec<String> {
    // split a list like `(1 2)(3 4), (1 3)` at commas that sit between parens
    let mut out = Vec::new();
    let mut depth = 0i32;
    let mut cur = String::new();
    for ch in text.chars() {
        match ch {
            '(' => {
                depth += 1;
                cur.push(ch);
            }
            ')' => {
                depth -= 1;
                cur.push(ch);
            }
            ',' if depth == 0 => {
                if !cur.trim().is_empty() {
                    out.push(cur.trim().to_string());
                }
                cur.clear();
            }
            _ => cur.push(ch),
        }
    }
    if !cur.trim().is_empty() {
        out.push(cur.trim().to_string());
    }
    out
}

/// A finite semi-simplicial set: simplices per dimension with face maps as
/// index arrays, the semi-simplicial identities checked at construction.
#[derive(Debug, Clone)]
pub struct SemiSimplicialSet {
    /// `simplices[p]` lists the canonical representatives in dimension `p`.
    simplex_counts: Vec<usize>,
    /// `faces[p][i]` maps dimension-`p` simplex indices one dimension down,
    /// for `0 <= i <= p` and `p >= 1`; `faces[0]` is empty.
    faces: Vec<Vec<Vec<usize>>>,
}

impl SemiSimplicialSet {
    pub fn new(simplex_counts: Vec<usize>, faces: Vec<Vec<Vec<usize>>>) -> Result<SemiSimplicialSet, FamilyError> {
        let s = SemiSimplicialSet { simplex_counts, faces };
        s.check_identities()?;
        Ok(s)
    }

    fn check_identities(&self) -> Result<(), FamilyError> {
        for p in 2..self.simplex_counts.len() {
            for j in 1..=p {
                for i in 0..j {
                    for s in 0..self.simplex_counts[p] {
                        let lhs = self.face(p - 1, i, self.face(p, j, s));
                        let rhs = self.face(p - 1, j - 1, self.face(p, i, s));
                        if lhs != rhs {
                            let mut msg = String::new();
                            let _ = write!(
                                msg,
                                "d_{i} d_{j} != d_{} d_{i} on simplex {s} of dimension {p}",
                                j - 1
                            );
                            return Err(FamilyError::IdentityViolation(msg));
                        }
                    }
                }
            }
        }
        Ok(())
    }

    pub fn dimensions(&self) -> usize {
        self.simplex_counts.len()
    }

    pub fn simplex_count(&self, p: usize) -> usize {
        self.simplex_counts.get(p).copied().unwrap_or(0)
    }

    pub fn face(&self, p: usize, i: usize, simplex: usize) -> usize {
        self.faces[p][i][simplex]
    }
}

/// Which block-braid word conventions produced valid face maps.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConventionReport {
    /// `t_i t_{i-1} .. t_1`, inverted, in the last slots.
    pub descending_valid: bool,
    /// the reversed word `t_1 .. t_i`, inverted.
    pub ascending_valid: bool,
    pub used: &'static str,
}

#[derive(Debug, Clone)]
pub struct BuiltComplex {
    pub complex: SemiSimplicialSet,
    pub conventions: ConventionReport,
}

/// Build the destabilization complex `W_n` over level `a + n`: dimension-`p`
/// simplices are the cosets of the image of level `a + n - p - 1`, faces act
/// by right multiplication with inverted block-braid words in the
/// Yang-Baxter elements, placed in the last slots.
pub fn build_w(
    fam: &StabilityFamily,
    n: u32,
    a_offset: u32,
    pmax: u32,
) -> Result<BuiltComplex, FamilyError> {
    let ell = (a_offset + n) as usize;
    if ell >= fam.level_count() {
        return Err(FamilyError::LevelOutOfRange { level: ell, levels: fam.level_count() });
    }
    if n == 0 || pmax + 1 > n {
        return Err(FamilyError::BadParameters(format!("need 0 <= pmax <= n-1, got n={n} pmax={pmax}")));
    }
    let descending = build_w_with_convention(fam, n, a_offset, pmax, true);
    let ascending = build_w_with_convention(fam, n, a_offset, pmax, false);
    let report = ConventionReport {
        descending_valid: descending.is_ok(),
        ascending_valid: ascending.is_ok(),
        used: if descending.is_ok() { "descending" } else { "ascending" },
    };
    match (descending, ascending) {
        (Ok(complex), _) => Ok(BuiltComplex { complex, conventions: report }),
        (Err(_), Ok(complex)) => Ok(BuiltComplex { complex, conventions: report }),
        (Err(e), Err(_)) => Err(e),
    }
}

fn build_w_with_convention(
    fam: &StabilityFamily,
    n: u32,
    a_offset: u32,
    pmax: u32,
    descending: bool,
) -> Result<SemiSimplicialSet, FamilyError> {
    let ell = (a_offset + n) as usize;
    let ambient = fam.elements(ell);

    // the subgroup cut out in each dimension, its generators, and the cosets
    let mut subgroup_elems: Vec<Vec<Perm>> = Vec::new();
    let mut subgroup_gens: Vec<Vec<Perm>> = Vec::new();
    let mut reps: Vec<Vec<Perm>> = Vec::new();
    let mut index_of: Vec<HashMap<Perm, usize>> = Vec::new();
    for p in 0..=pmax as usize {
        let from = ell - p - 1;
        let elems = fam.pushed_elements(from, ell);
        let gens = fam.pushed_generators(from, ell);
        let canon = |g: &Perm| -> Perm {
            elems
                .iter()
                .map(|h| g.compose(h))
                .min()
                .expect("subgroups are nonempty")
        };
        let mut seen: HashMap<Perm, usize> = HashMap::new();
        let mut list: Vec<Perm> = Vec::new();
        for g in ambient {
            let rep = canon(g);
            if !seen.contains_key(&rep) {
                seen.insert(rep.clone(), 0);
                list.push(rep);
            }
        }
        list.sort();
        let map: HashMap<Perm, usize> =
            list.iter().cloned().enumerate().map(|(i, g)| (g, i)).collect();
        subgroup_elems.push(elems);
        subgroup_gens.push(gens);
        reps.push(list);
        index_of.push(map);
    }

    // face words: w_{p,i} = inverse of the block-braid word on the last
    // p + 1 slots, expressed through the level's yb elements
    let ts = fam.yb(ell);
    let degree = fam.elements(ell)[0].degree();
    let word = |p: usize, i: usize| -> Result<Perm, FamilyError> {
        let mut b = Perm::identity(degree);
        // slot pairs (a+n-p+j-1, a+n-p+j) for j = 1..=i, i.e. t indices
        // a+n-p+j-1 (1-based)
        let js: Vec<usize> = (1..=i).collect();
        let order: Vec<usize> = if descending { js.iter().rev().copied().collect() } else { js };
        for j in order {
            let t_index = (a_offset + n) as usize - p + j - 1;
            let t = ts.get(t_index - 1).ok_or_else(|| {
                FamilyError::BadParameters(format!(
                    "level {ell} is missing yb element t_{t_index}"
                ))
            })?;
            b = b.compose(t);
        }
        Ok(b.inverse())
    };

    let mut faces: Vec<Vec<Vec<usize>>> = vec![Vec::new()];
    for p in 1..=pmax as usize {
        let canon_down = |g: &Perm| -> Perm {
            subgroup_elems[p - 1]
                .iter()
                .map(|h| g.compose(h))
                .min()
                .unwrap()
        };
        let mut per_i: Vec<Vec<usize>> = Vec::new();
        for i in 0..=p {
            let w = word(p, i)?;
            let mut images = Vec::with_capacity(reps[p].len());
            for g in &reps[p] {
                let target = canon_down(&g.compose(&w));
                // well-definedness under the subgroup on the other slots
                for h in &subgroup_gens[p] {
                    let alt = canon_down(&g.compose(h).compose(&w));
                    if alt != target {
                        return Err(FamilyError::IdentityViolation(format!(
                            "face d_{i} in dimension {p} is not constant on cosets"
                        )));
                    }
                }
                images.push(index_of[p - 1][&target]);
            }
            per_i.push(images);
        }
        faces.push(per_i);
    }

    let counts: Vec<usize> = reps.iter().map(|r| r.len()).collect();
    SemiSimplicialSet::new(counts, faces)
}

/// Number of connected components: union-find over vertices joined by edges.
pub fn pi0(w: &SemiSimplicialSet) -> usize {
    struct UnionFind(Vec<usize>);
    impl UnionFind {
        fn find(&mut self, x: usize) -> usize {
            let mut x = x;
            while self.0[x] != x {
                self.0[x] = self.0[self.0[x]];
                x = self.0[x];
            }
            x
        }
        fn union(&mut self, x: usize, y: usize) {
            let (a, b) = (self.find(x), self.find(y));
            if a != b {
                self.0[a] = b;
            }
        }
    }
    let vertices = w.simplex_count(0);
    let mut uf = UnionFind((0..vertices).collect());
    if w.dimensions() > 1 {
        for e in 0..w.simplex_count(1) {
            uf.union(w.face(1, 0, e), w.face(1, 1, e));
        }
    }
    (0..vertices)
        .filter(|&v| uf.find(v) == v)
        .count()
}

/// Whether the image of the previous level together with the last
/// Yang-Baxter element generates the whole level; equivalent to the
/// associated complex being connected.
pub fn barucco_check(fam: &StabilityFamily, n: u32, a_offset: u32) -> Result<bool, FamilyError> {
    let ell = (a_offset + n) as usize;
    if ell >= fam.level_count() || ell == 0 {
        return Err(FamilyError::LevelOutOfRange { level: ell, levels: fam.level_count() });
    }
    let mut gens = fam.pushed_generators(ell - 1, ell);
    if n >= 2 {
        let t_index = (a_offset + n - 1) as usize;
        let t = fam.yb(ell).get(t_index - 1).ok_or_else(|| {
            FamilyError::BadParameters(format!("level {ell} is missing yb element t_{t_index}"))
        })?;
        gens.push(t.clone());
    }
    let degree = fam.elements(ell)[0].degree();
    let generated = closure(degree, &gens, fam.order(ell) + 1)
        .map_err(|_| FamilyError::ResourceLimit { level: ell, cap: fam.order(ell) + 1 })?;
    Ok(generated.len() == fam.order(ell))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn symmetric_family_validates() {
        let fam = symmetric_family(4);
        assert_eq!(fam.order(4), 24);
        assert_eq!(fam.order(0), 1);
        let id_fam = symmetric_identity_family(3);
        assert_eq!(id_fam.order(3), 6);
        cyclic_family(3);
        trivial_family(3);
    }

    #[test]
    fn validation_rejects_broken_families() {
        // collapse the injection out of level 2: not injective
        let mut levels: Vec<LevelData> = (0..=3usize)
            .map(|n| {
                let gens: Vec<Perm> = (1..n)
                    .map(|i| Perm::from_cycles(n, &[vec![i, i + 1]]))
                    .collect();
                let inj_images: Vec<Perm> =
                    gens.iter().map(|g| g.extend(n + 1)).collect();
                LevelData {
                    degree: n,
                    gens,
                    inj_images: if n < 3 { inj_images } else { Vec::new() },
                    yb: vec![Perm::identity(n); n.saturating_sub(1)],
                }
            })
            .collect();
        levels[2].inj_images = vec![Perm::identity(3); 1];
        let err = StabilityFamily::new(levels, &FamilyOptions::default()).unwrap_err();
        assert!(matches!(err, FamilyError::Validation { level: 2, .. }));

        // break a braid relation at level 3
        let mut levels: Vec<LevelData> = (0..=3usize)
            .map(|n| {
                let gens: Vec<Perm> = (1..n)
                    .map(|i| Perm::from_cycles(n, &[vec![i, i + 1]]))
                    .collect();
                let inj_images: Vec<Perm> =
                    gens.iter().map(|g| g.extend(n + 1)).collect();
                LevelData {
                    degree: n,
                    gens,
                    inj_images: if n < 3 { inj_images } else { Vec::new() },
                    yb: (1..n)
                        .map(|j| Perm::from_cycles(n, &[vec![j, j + 1]]))
                        .collect(),
                }
            })
            .collect();
        levels[3].yb[1] = Perm::from_cycles(4, &[vec![1, 2], vec![3, 4]]);
        let err = StabilityFamily::new(levels, &FamilyOptions::default()).unwrap_err();
        assert!(matches!(err, FamilyError::Validation { .. }));
    }

    #[test]
    fn family_file_round_trip() {
        let fam = symmetric_family(3);
        let text = "
level 0
gens:
level 1
gens:
level 2
gens: (1 2)
inj: (1 2) -> (1 2)
yb 1: (1 2)
level 3
gens: (1 2), (2 3)
yb 1: (1 2)
yb 2: (2 3)
";
        let loaded = load_family(text, &FamilyOptions::default()).unwrap();
        assert_eq!(loaded.level_count(), 4);
        for n in 0..=3 {
            assert_eq!(loaded.order(n), fam.order(n), "level {n}");
        }
        let w_loaded = build_w(&loaded, 3, 0, 2).unwrap();
        let w_fam = build_w(&fam, 3, 0, 2).unwrap();
        for p in 0..=2 {
            assert_eq!(
                w_loaded.complex.simplex_count(p),
                w_fam.complex.simplex_count(p)
            );
        }
    }

    #[test]
    fn family_file_errors() {
        assert!(matches!(
            load_family("gens: (1 2)", &FamilyOptions::default()),
            Err(FamilyError::Parse { .. })
        ));
        let bad = "
level 0
gens:
level 1
gens: (1 2)
";
        // level 1 generators need injection images into a later level only
        // if one exists; this parses, then validates fine
        assert!(load_family(bad, &FamilyOptions::default()).is_ok());
        let really_bad = "
level 0
gens:
level 1
gens: (1 2
";
        assert!(load_family(really_bad, &FamilyOptions::default()).is_err());
    }

    #[test]
    fn w_counts_for_the_symmetric_family() {
        let fam = symmetric_family(4);
        let built = build_w(&fam, 3, 0, 2).unwrap();
        assert_eq!(built.complex.simplex_count(0), 3);
        assert_eq!(built.complex.simplex_count(1), 6);
        assert_eq!(built.complex.simplex_count(2), 6);
        for n in 2..=4u32 {
            let built = build_w(&fam, n, 0, n - 1).unwrap();
            for p in 0..n {
                let expected = fam.order(n as usize)
                    / fam.order((n - p - 1) as usize);
                assert_eq!(
                    built.complex.simplex_count(p as usize),
                    expected,
                    "n={n} p={p}"
                );
            }
        }
    }

    #[test]
    fn identity_yb_faces_coincide() {
        let fam = symmetric_identity_family(3);
        let built = build_w(&fam, 3, 0, 2).unwrap();
        for p in 1..=2usize {
            for s in 0..built.complex.simplex_count(p) {
                let d0 = built.complex.face(p, 0, s);
                for i in 1..=p {
                    assert_eq!(built.complex.face(p, i, s), d0);
                }
            }
        }
        assert_eq!(pi0(&built.complex), 3);
    }

    #[test]
    fn transposition_yb_is_connected() {
        let fam = symmetric_family(4);
        let built = build_w(&fam, 3, 0, 2).unwrap();
        assert_eq!(pi0(&built.complex), 1);
        let built = build_w(&fam, 4, 0, 3).unwrap();
        assert_eq!(pi0(&built.complex), 1);
    }

    #[test]
    fn d0_preserves_the_identity_coset() {
        let fam = symmetric_family(4);
        let built = build_w(&fam, 4, 0, 3).unwrap();
        // the identity is its own canonical representative in every
        // dimension, always at index 0 of the sorted rep lists
        for p in 1..=3usize {
            assert_eq!(built.complex.face(p, 0, 0), 0, "p = {p}");
        }
    }

    #[test]
    fn offset_builds_use_shifted_slots() {
        let fam = symmetric_family(4);
        for a in 0..=2u32 {
            let n = 4 - a;
            let pmax = n - 1;
            let built = build_w(&fam, n, a, pmax).unwrap();
            for p in 0..=pmax {
                let expect = fam.order(4) / fam.order((4 - p - 1) as usize);
                assert_eq!(built.complex.simplex_count(p as usize), expect, "a={a} p={p}");
            }
        }
        // a + n beyond the family is rejected
        assert!(matches!(
            build_w(&fam, 3, 3, 1),
            Err(FamilyError::LevelOutOfRange { .. })
        ));
    }

    #[test]
    fn group_order_cap_is_enforced() {
        let levels: Vec<LevelData> = (0..=4usize)
            .map(|n| {
                let gens: Vec<Perm> = (1..n)
                    .map(|i| Perm::from_cycles(n, &[vec![i, i + 1]]))
                    .collect();
                let inj_images: Vec<Perm> = if n < 4 {
                    gens.iter().map(|g| g.extend(n + 1)).collect()
                } else {
                    Vec::new()
                };
                let yb: Vec<Perm> = (1..n)
                    .map(|j| Perm::from_cycles(n, &[vec![j, j + 1]]))
                    .collect();
                LevelData { degree: n, gens, inj_images, yb }
            })
            .collect();
        let err = StabilityFamily::new(levels, &FamilyOptions { max_group_order: 10 });
        assert!(matches!(err, Err(FamilyError::ResourceLimit { cap: 10, .. })));
    }

    #[test]
    fn barucco_matches_connectivity() {
        let corpus: Vec<StabilityFamily> = vec![
            symmetric_family(5),
            symmetric_identity_family(5),
            cyclic_family(5),
            trivial_family(5),
        ];
        for fam in &corpus {
            for n in 1..fam.level_count() as u32 {
                let connected = if n == 1 {
                    // one vertex per coset, no edges: connected iff one coset
                    fam.order(n as usize) == fam.order(n as usize - 1)
                } else {
                    pi0(&build_w(fam, n, 0, 1).unwrap().complex) == 1
                };
                assert_eq!(
                    barucco_check(fam, n, 0).unwrap(),
                    connected,
                    "n = {n}"
                );
            }
        }
    }

    #[test]
    fn identity_yb_component_count_is_the_index() {
        let fam = symmetric_identity_family(5);
        for n in 2..=5u32 {
            let built = build_w(&fam, n, 0, 1).unwrap();
            assert_eq!(pi0(&built.complex), n as usize);
        }
    }

    #[test]
    fn word_convention_is_adjudicated_by_the_identities() {
        // with involutive yb elements the two word conventions are honest
        // opposite cycles; exactly one of them satisfies the identities,
        // and face maps then delete one letter of an injective word
        let fam = symmetric_family(4);
        let built = build_w(&fam, 4, 0, 3).unwrap();
        assert!(!built.conventions.descending_valid);
        assert!(built.conventions.ascending_valid);
        assert_eq!(built.conventions.used, "ascending");
    }
}
