//! Command-line front end: every subcommand runs a verification sweep and
//! emits a `Report`, as JSON with `--json` or as an aligned text table.

use clap::{Parser, Subcommand};
use mcgstab_core::coeff::{
    check_coef_condition, degree, h1_matrix, tensor_power_system, transvection_matrix,
    DegreeOutcome,
};
use mcgstab_core::destab::{
    barucco_check, build_w, cyclic_family, load_family, pi0, symmetric_family,
    symmetric_identity_family, trivial_family, FamilyOptions, StabilityFamily,
};
use mcgstab_core::groupoid::{free_homotopic, parse_path, ArcPath};
use mcgstab_core::homology::{chain_complex, euler_characteristic, euler_from_betti, homology};
use mcgstab_core::mapclass::{
    block_braid, block_braid_expected_image, block_conjugation_outcomes, iota_image, phi,
    refute_braiding_candidates, search_iota_asymmetric_curve, verify_yang_baxter, BraidWord,
    MappingClass,
};
use mcgstab_core::ranges::{
    connectivity_bound, range_stab, range_theorem_a, range_theorem_b, CoefficientKind,
};
use mcgstab_core::report::Report;
use mcgstab_core::surface::{cut_formula, surface_type, CombSurface};
use mcgstab_core::testutil::Rng;
use serde_json::json;

#[derive(Parser, Debug)]
#[command(name = "mcgstab", version, about = "verification workbench for disk-stabilization calculus")]
pub struct Cli {
    /// Emit the report as JSON instead of text.
    #[arg(long, global = true)]
    pub json: bool,
    /// Seed for the randomized sweeps.
    #[arg(long, global = true, default_value_t = 0x5eed)]
    pub seed: u64,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Invariants of the iterated disk sum against the closed form.
    Surface {
        #[arg(long)]
        m: u32,
    },
    /// Cut a disordered simplex: closed form against the gluing oracle.
    Cut {
        #[arg(long)]
        g: i64,
        #[arg(long)]
        r: i64,
        #[arg(long)]
        nu: u8,
        #[arg(long)]
        p: u32,
    },
    /// Relation and formula sweeps for the twist calculus.
    Verify {
        #[command(subcommand)]
        what: VerifyWhat,
    },
    /// Test every braiding candidate up to a twist power bound.
    RefuteBraiding {
        #[arg(long, default_value_t = 3)]
        k: i64,
    },
    /// Search for a curve not preserved by the orientation flip.
    SearchCurve {
        #[arg(long)]
        m: u32,
        #[arg(long)]
        len: usize,
    },
    /// Build a destabilization complex and report its structure.
    Destab {
        #[arg(long, default_value = "sym")]
        family: String,
        #[arg(long)]
        family_file: Option<std::path::PathBuf>,
        #[arg(long)]
        n: u32,
        #[arg(long, default_value_t = 0)]
        a: u32,
        #[arg(long)]
        pmax: Option<u32>,
        /// Also compute reduced homology.
        #[arg(long)]
        homology: bool,
    },
    /// Reduced homology of a destabilization complex.
    Homology {
        #[arg(long, default_value = "sym")]
        family: String,
        #[arg(long)]
        family_file: Option<std::path::PathBuf>,
        #[arg(long)]
        n: u32,
    },
    /// Coefficient-system checks and the degree recursion.
    Coeff {
        #[arg(long)]
        k: u32,
        #[arg(long)]
        n: u32,
        /// Sweep all smaller parameters too.
        #[arg(long)]
        check_all: bool,
    },
    /// Stability-range tables.
    Ranges {
        #[arg(long)]
        theorem: String,
        #[arg(long)]
        g: Option<i64>,
        #[arg(long)]
        k: Option<i64>,
        #[arg(long)]
        split: bool,
        #[arg(long)]
        n: Option<i64>,
        #[arg(long)]
        kind: Option<String>,
        /// Validity threshold for twisted kinds.
        #[arg(long, default_value_t = 0)]
        at: i64,
        /// Number of marked boundary components for the connectivity bound.
        #[arg(long, default_value_t = 1)]
        nu: u8,
    },
    /// The full verification suite.
    All,
}

#[derive(Subcommand, Debug)]
pub enum VerifyWhat {
    /// Braid and commutation relations, twist formulas, index shifts.
    Braid {
        #[arg(long, default_value_t = 8)]
        m: u32,
    },
    /// The Yang-Baxter equation for the inverse twist and its powers.
    Yb,
    /// Block braids: moved generators, closed-form images, conjugation.
    Block {
        #[arg(long, default_value_t = 6)]
        max: u32,
    },
}

pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { 2 } else { 0 };
        }
    };
    let json = cli.json;
    match execute(cli) {
        Ok(report) => {
            if json {
                println!("{}", serde_json::to_string_pretty(&report).unwrap());
            } else {
                print!("{}", report.render_text());
            }
            if report.pass {
                0
            } else {
                1
            }
        }
        Err(message) => {
            eprintln!("error: {message}");
            3
        }
    }
}

pub fn execute(cli: Cli) -> Result<Report, String> {
    let log = std::env::var("MCGSTAB_LOG").ok().filter(|v| !v.is_empty());
    let report = match cli.command {
        Command::Surface { m } => surface_report(m)?,
        Command::Cut { g, r, nu, p } => cut_report(g, r, nu, p)?,
        Command::Verify { what } => match what {
            VerifyWhat::Braid { m } => verify_braid_report(m, cli.seed)?,
            VerifyWhat::Yb => verify_yb_report()?,
            VerifyWhat::Block { max } => verify_block_report(max)?,
        },
        Command::RefuteBraiding { k } => refute_report(k)?,
        Command::SearchCurve { m, len } => search_report(m, len)?,
        Command::Destab { family, family_file, n, a, pmax, homology } => {
            let fam = resolve_family(&family, family_file.as_deref(), a + n)?;
            destab_report(&family, &fam, n, a, pmax, homology)?
        }
        Command::Homology { family, family_file, n } => {
            let fam = resolve_family(&family, family_file.as_deref(), n)?;
            homology_report(&family, &fam, n)?
        }
        Command::Coeff { k, n, check_all } => coeff_report(k, n, check_all)?,
        Command::Ranges { theorem, g, k, split, n, kind, at, nu } => {
            ranges_report(&theorem, g, k, split, n, kind.as_deref(), at, nu)?
        }
        Command::All => all_report(cli.seed)?,
    };
    if log.is_some() {
        for c in &report.checks {
            eprintln!("[mcgstab] {}: {} ({})", c.name, if c.pass { "pass" } else { "FAIL" }, c.detail);
        }
    }
    Ok(report)
}

fn surface_report(m: u32) -> Result<Report, String> {
    if m == 0 {
        return Err("m must be at least 1".into());
    }
    let mut report = Report::new("surface", json!({ "m": m }));
    let inv = CombSurface::disk_sum(m).invariants();
    let (g, r) = surface_type(m);
    report.check("face_trace_matches_closed_form", || {
        (
            inv.genus == g && inv.boundaries == r,
            format!(
                "oracle (g, r) = ({}, {}), closed form ({g}, {r})",
                inv.genus, inv.boundaries
            ),
        )
    });
    report.check("euler_characteristic", || {
        (
            inv.euler == 2 - m as i64,
            format!("chi = {}, expected {}", inv.euler, 2 - m as i64),
        )
    });
    report.check("marks_parity", || {
        let expected = if m % 2 == 1 { 1 } else { 2 };
        (
            inv.nu == expected,
            format!("nu = {}, expected {expected}", inv.nu),
        )
    });
    report.params = json!({
        "m": m,
        "genus": inv.genus,
        "boundaries": inv.boundaries,
        "euler": inv.euler,
        "nu": inv.nu,
    });
    Ok(report)
}

fn cut_report(g: i64, r: i64, nu: u8, p: u32) -> Result<Report, String> {
    let mut report = Report::new("cut", json!({ "g": g, "r": r, "nu": nu, "p": p }));
    let cmp = cut_formula(g, r, nu, p).map_err(|e| e.to_string())?;
    report.check("genus_formula_matches_oracle", || {
        (
            cmp.genus_agrees,
            format!("formula {} oracle {}", cmp.genus_formula, cmp.oracle.genus),
        )
    });
    report.check("boundary_count_comparison", || {
        // the closed form's sign disagrees with the oracle for even p;
        // the oracle is authoritative, so this check only reports
        (
            true,
            format!(
                "oracle r' = {}, printed closed form r' = {}, agree: {}",
                cmp.oracle.boundaries, cmp.boundaries_formula, cmp.boundaries_agree
            ),
        )
    });
    report.params = json!({
        "g": g, "r": r, "nu": nu, "p": p,
        "genus_formula": cmp.genus_formula,
        "genus_oracle": cmp.oracle.genus,
        "boundaries_oracle": cmp.oracle.boundaries,
        "boundaries_formula": cmp.boundaries_formula,
        "boundaries_agree": cmp.boundaries_agree,
    });
    Ok(report)
}

fn twist(m: u32, i: u32) -> MappingClass {
    MappingClass::dehn_twist(m, i, 1).expect("twist index in range")
}

fn verify_braid_report(max_m: u32, seed: u64) -> Result<Report, String> {
    if max_m < 3 {
        return Err("need m >= 3".into());
    }
    let mut report = Report::new("verify braid", json!({ "m": max_m }));
    report.check("twist_images", || {
        for m in 2..=max_m {
            for i in 1..m {
                let t = twist(m, i);
                let expect_i = format!("r{} R{} r{}", i, i + 1, i);
                if t.image(i) != &parse_path(m, &expect_i).unwrap()
                    || t.image(i + 1) != &ArcPath::generator(m, i)
                {
                    return (false, format!("twist formula fails at m={m} i={i}"));
                }
                let tinv = MappingClass::dehn_twist(m, i, -1).unwrap();
                let expect_inv = format!("r{} R{} r{}", i + 1, i, i + 1);
                if tinv.image(i) != &ArcPath::generator(m, i + 1)
                    || tinv.image(i + 1) != &parse_path(m, &expect_inv).unwrap()
                {
                    return (false, format!("inverse twist formula fails at m={m} i={i}"));
                }
            }
        }
        (true, format!("generator images verified for m <= {max_m}"))
    });
    report.check("braid_relations", || {
        for m in 3..=max_m {
            for i in 1..m - 1 {
                let a = twist(m, i);
                let b = twist(m, i + 1);
                let lhs = a.compose(&b).unwrap().compose(&a).unwrap();
                let rhs = b.compose(&a).unwrap().compose(&b).unwrap();
                if lhs != rhs {
                    return (false, format!("fails at m={m} i={i}"));
                }
            }
        }
        (true, format!("adjacent relations hold for m <= {max_m}"))
    });
    report.check("commutation_relations", || {
        for m in 4..=max_m {
            for i in 1..m {
                for j in i + 2..m {
                    let a = twist(m, i);
                    let b = twist(m, j);
                    if a.compose(&b).unwrap() != b.compose(&a).unwrap() {
                        return (false, format!("fails at m={m} i={i} j={j}"));
                    }
                }
            }
        }
        (true, format!("distant twists commute for m <= {max_m}"))
    });
    report.check("index_shift_identities", || {
        let one = MappingClass::identity(1);
        for m in 2..max_m {
            for i in 1..m {
                if twist(m, i).sum(&one) != twist(m + 1, i) {
                    return (false, format!("right shift fails at m={m} i={i}"));
                }
                if one.sum(&twist(m, i)) != twist(m + 1, i + 1) {
                    return (false, format!("left shift fails at m={m} i={i}"));
                }
            }
        }
        (true, format!("sum with the disk shifts indices for m <= {max_m}"))
    });
    report.check("braid_homomorphism_random_words", || {
        let mut rng = Rng::new(seed);
        for _ in 0..40 {
            let strands = 3 + rng.below((max_m - 2) as usize) as u32;
            let mut u = Vec::new();
            let mut v = Vec::new();
            for _ in 0..rng.below(7) {
                let i = 1 + rng.below((strands - 1) as usize) as i32;
                u.push(if rng.below(2) == 0 { i } else { -i });
            }
            for _ in 0..rng.below(7) {
                let i = 1 + rng.below((strands - 1) as usize) as i32;
                v.push(if rng.below(2) == 0 { i } else { -i });
            }
            let mut uv = u.clone();
            uv.extend_from_slice(&v);
            let lhs = phi(&BraidWord::new(strands, uv).unwrap()).unwrap();
            let rhs = phi(&BraidWord::new(strands, u).unwrap())
                .unwrap()
                .compose(&phi(&BraidWord::new(strands, v).unwrap()).unwrap())
                .unwrap();
            if lhs != rhs {
                return (false, "homomorphism property fails".into());
            }
            if lhs.bar_conjugate() != lhs {
                return (false, "involution conjugation moves a braid image".into());
            }
        }
        (true, "products and involution centralization on 40 random words".into())
    });
    Ok(report)
}

fn verify_yb_report() -> Result<Report, String> {
    let mut report = Report::new("verify yb", json!({}));
    report.check("inverse_twist_is_yang_baxter", || {
        let t_inv = MappingClass::dehn_twist(2, 1, -1).unwrap();
        (verify_yang_baxter(&t_inv).unwrap(), "equation holds on three disks".into())
    });
    report.check("identity_is_yang_baxter", || {
        (
            verify_yang_baxter(&MappingClass::identity(2)).unwrap(),
            "trivially".into(),
        )
    });
    report.check("higher_powers_fail", || {
        for k in [-3i64, -2, 2, 3] {
            let tau = MappingClass::twist_power(2, 1, k).unwrap();
            if verify_yang_baxter(&tau).unwrap() {
                return (false, format!("power {k} unexpectedly satisfies the equation"));
            }
        }
        (true, "powers 2 and 3 of the twist fail the equation".into())
    });
    Ok(report)
}

fn verify_block_report(max: u32) -> Result<Report, String> {
    if max < 2 {
        return Err("need --max >= 2".into());
    }
    let mut report = Report::new("verify block", json!({ "max": max }));
    report.check("moved_generators", || {
        for total in 2..=max {
            for m in 1..total {
                let n = total - m;
                let b = block_braid(m, n).unwrap();
                for i in 1..=n {
                    if b.apply(&ArcPath::generator(total, m + i)).unwrap()
                        != ArcPath::generator(total, i)
                    {
                        return (false, format!("m={m} n={n} i={i}"));
                    }
                }
            }
        }
        (true, format!("last disks move down for m+n <= {max}"))
    });
    report.check("closed_form_images", || {
        for total in 2..=max {
            for m in 1..total {
                let n = total - m;
                let b = block_braid(m, n).unwrap();
                for idx in 1..=total {
                    let got = b.apply(&ArcPath::generator(total, idx)).unwrap();
                    let want = block_braid_expected_image(m, n, idx).unwrap();
                    if got != want {
                        return (false, format!("m={m} n={n} idx={idx}: {got} != {want}"));
                    }
                }
            }
        }
        (true, format!("palindromic closed forms match for m+n <= {max}"))
    });
    report.check("face_composites_delete_one_arc", || {
        for n in 2..=max {
            for p in 1..n {
                for i in 1..=p {
                    // T_{n-p+i-1} . ... . T_{n-p} on rank n
                    let mut composite = MappingClass::identity(n);
                    for idx in (n - p)..(n - p + i) {
                        composite = MappingClass::dehn_twist(n, idx, 1)
                            .unwrap()
                            .compose(&composite)
                            .unwrap();
                    }
                    for j in 1..=p {
                        let got = composite.apply(&ArcPath::generator(n, n - p + j)).unwrap();
                        let want = if j <= i {
                            ArcPath::generator(n, n - p + j - 1)
                        } else {
                            ArcPath::generator(n, n - p + j)
                        };
                        if got != want {
                            return (false, format!("n={n} p={p} i={i} j={j}"));
                        }
                    }
                }
            }
        }
        (true, format!("deletion patterns verified for n <= {max}"))
    });
    report.check("block_conjugation", || {
        let mut literal_holds = 0usize;
        let mut total_pairs = 0usize;
        for sum in 2..=max {
            for m in 1..sum {
                let n = sum - m;
                let mut fs = vec![MappingClass::identity(m)];
                fs.extend((1..m).map(|i| twist(m, i)));
                fs.extend((1..m).map(|i| MappingClass::dehn_twist(m, i, -1).unwrap()));
                let mut gs = vec![MappingClass::identity(n)];
                gs.extend((1..n).map(|i| twist(n, i)));
                gs.extend((1..n).map(|i| MappingClass::dehn_twist(n, i, -1).unwrap()));
                for f in &fs {
                    for g in &gs {
                        total_pairs += 1;
                        let out = block_conjugation_outcomes(m, n, f, g).unwrap();
                        if !out.conjugation {
                            return (false, format!("conjugation identity fails at m={m} n={n}"));
                        }
                        if out.mixed_inverse_variant {
                            literal_holds += 1;
                        }
                    }
                }
            }
        }
        (
            true,
            format!(
                "conjugation identity holds on {total_pairs} generator pairs; \
                 the mixed-inverse variant holds on {literal_holds} of them"
            ),
        )
    });
    Ok(report)
}

fn refute_report(k: i64) -> Result<Report, String> {
    if k < 1 {
        return Err("need --k >= 1".into());
    }
    let mut report = Report::new("refute-braiding", json!({ "k": k }));
    let sweep = refute_braiding_candidates(k).map_err(|e| e.to_string())?;
    let mut detail = Vec::new();
    for c in &sweep.candidates {
        let convs: Vec<String> = c
            .conventions
            .iter()
            .map(|cv| {
                format!(
                    "{}: nat12={} nat21={}",
                    cv.name, cv.naturality_one_two, cv.naturality_two_one
                )
            })
            .collect();
        detail.push(json!({
            "power": c.power,
            "curve_condition": c.curve_condition,
            "conventions": convs,
            "refuted": c.refuted,
        }));
    }
    report.params = json!({ "k": k, "candidates": detail });
    report.check("identity_fails_curve_condition", || {
        let zero = sweep.candidates.iter().find(|c| c.power == 0).unwrap();
        (!zero.curve_condition && zero.refuted, "the identity moves no curve".into())
    });
    report.check("higher_powers_fail_curve_condition", || {
        for c in &sweep.candidates {
            if c.power.abs() >= 2 && c.curve_condition {
                return (false, format!("power {} passes the curve condition", c.power));
            }
        }
        (true, "all powers of size two and up move the curve wrongly".into())
    });
    report.check("every_candidate_fails_some_check", || {
        for c in &sweep.candidates {
            let some_failure =
                !c.curve_condition || c.conventions.iter().any(|cv| !cv.both());
            if !some_failure {
                return (false, format!("power {} passes every mechanized check", c.power));
            }
        }
        (true, "each candidate fails a curve or naturality check under some convention".into())
    });
    report.check("single_twists_reported_per_convention", || {
        for power in [-1i64, 1] {
            if k < power.abs() {
                continue;
            }
            let c = sweep.candidates.iter().find(|c| c.power == power).unwrap();
            if !c.curve_condition || c.refuted {
                return (
                    false,
                    format!("power {power} should survive the mechanized checks"),
                );
            }
        }
        (
            true,
            "single twists survive one hexagon convention; their exclusion needs \
             intersection numbers, out of scope"
                .into(),
        )
    });
    Ok(report)
}

fn search_report(m: u32, len: usize) -> Result<Report, String> {
    if m < 1 {
        return Err("need --m >= 1".into());
    }
    let mut report = Report::new("search-curve", json!({ "m": m, "len": len }));
    let found = search_iota_asymmetric_curve(m, len);
    let witness = found.as_ref().map(|w| w.to_string());
    report.check("search_completed", || match &found {
        Some(w) => {
            let path = w.to_path();
            let asym = !free_homotopic(&iota_image(&path), &path, true).unwrap();
            (asym, format!("witness {w}"))
        }
        None => (true, "no asymmetric curve in range".into()),
    });
    report.params = json!({ "m": m, "len": len, "witness": witness });
    Ok(report)
}

fn resolve_family(
    name: &str,
    file: Option<&std::path::Path>,
    min_levels: u32,
) -> Result<StabilityFamily, String> {
    if let Some(path) = file {
        let text = std::fs::read_to_string(path)
            .map_err(|e| format!("cannot read {}: {e}", path.display()))?;
        return load_family(&text, &FamilyOptions::default()).map_err(|e| e.to_string());
    }
    let top = min_levels.max(2);
    match name {
        "sym" => Ok(symmetric_family(top)),
        "sym-id" => Ok(symmetric_identity_family(top)),
        "cyclic" => Ok(cyclic_family(top)),
        "trivial" => Ok(trivial_family(top)),
        other => Err(format!(
            "unknown family `{other}` (expected sym, sym-id, cyclic, trivial, or --family-file)"
        )),
    }
}

fn destab_report(
    name: &str,
    fam: &StabilityFamily,
    n: u32,
    a: u32,
    pmax: Option<u32>,
    with_homology: bool,
) -> Result<Report, String> {
    let pmax = pmax.unwrap_or(n.saturating_sub(1));
    let mut report = Report::new(
        "destab",
        json!({ "family": name, "n": n, "a": a, "pmax": pmax }),
    );
    let built = build_w(fam, n, a, pmax).map_err(|e| e.to_string())?;
    report.check("identities_validated", || {
        (
            true,
            format!(
                "word conventions: descending={} ascending={}, used {}",
                built.conventions.descending_valid,
                built.conventions.ascending_valid,
                built.conventions.used
            ),
        )
    });
    report.check("simplex_counts_are_coset_indices", || {
        for p in 0..=pmax {
            let expect = fam.order((a + n) as usize) / fam.order((a + n - p - 1) as usize);
            if built.complex.simplex_count(p as usize) != expect {
                return (false, format!("dimension {p}"));
            }
        }
        let counts: Vec<usize> = (0..=pmax)
            .map(|p| built.complex.simplex_count(p as usize))
            .collect();
        (true, format!("counts {counts:?}"))
    });
    let components = pi0(&built.complex);
    report.check("pi0_matches_generation_criterion", || {
        match barucco_check(fam, n, a) {
            Ok(generates) => (
                generates == (components == 1),
                format!("{components} components, criterion says generates={generates}"),
            ),
            Err(e) => (false, e.to_string()),
        }
    });
    if with_homology {
        let cc = chain_complex(&built.complex, true);
        let h = homology(&cc);
        report.check("boundary_squares_to_zero", || {
            (cc.boundary_squares_to_zero(), "checked".into())
        });
        report.check("euler_consistency", || {
            let a = euler_characteristic(&cc);
            let b = euler_from_betti(&h);
            (a == b, format!("chi = {a}, from homology {b}"))
        });
        let degrees: Vec<_> = h
            .degrees
            .iter()
            .map(|d| {
                json!({
                    "p": d.degree,
                    "betti": d.betti,
                    "torsion": d.torsion.iter().map(|t| t.to_string()).collect::<Vec<_>>(),
                })
            })
            .collect();
        report.params = json!({
            "family": name, "n": n, "a": a, "pmax": pmax,
            "pi0": components,
            "degrees": degrees,
            "connectivity_homological": h.connectivity_homological,
        });
    } else {
        report.params = json!({
            "family": name, "n": n, "a": a, "pmax": pmax,
            "pi0": components,
        });
    }
    Ok(report)
}

fn homology_report(name: &str, fam: &StabilityFamily, n: u32) -> Result<Report, String> {
    let mut report = Report::new("homology", json!({ "family": name, "n": n }));
    let built = build_w(fam, n, 0, n.saturating_sub(1)).map_err(|e| e.to_string())?;
    let cc = chain_complex(&built.complex, true);
    let h = homology(&cc);
    report.check("boundary_squares_to_zero", || {
        (cc.boundary_squares_to_zero(), "checked".into())
    });
    report.check("euler_consistency", || {
        let a = euler_characteristic(&cc);
        let b = euler_from_betti(&h);
        (a == b, format!("chi = {a}, from homology {b}"))
    });
    let degrees: Vec<_> = h
        .degrees
        .iter()
        .map(|d| {
            json!({
                "p": d.degree,
                "betti": d.betti,
                "torsion": d.torsion.iter().map(|t| t.to_string()).collect::<Vec<_>>(),
            })
        })
        .collect();
    report.params = json!({
        "family": name,
        "n": n,
        "degrees": degrees,
        "connectivity_homological": h.connectivity_homological,
    });
    Ok(report)
}

fn coeff_report(k: u32, n: u32, check_all: bool) -> Result<Report, String> {
    if n < 4 {
        return Err("need --n >= 4".into());
    }
    let mut report = Report::new("coeff", json!({ "k": k, "n": n, "check_all": check_all }));
    report.check("twists_act_as_transvections", || {
        for m in 2..=(n + 2) {
            for i in 1..m {
                if h1_matrix(&twist(m, i)) != transvection_matrix(m, i) {
                    return (false, format!("m={m} i={i}"));
                }
            }
        }
        (true, format!("two computation paths agree for m <= {}", n + 2))
    });
    report.check("coef_condition", || {
        let ks = if check_all { 1..=k } else { k..=k };
        for kk in ks {
            let ns = if check_all { 2..=n } else { n..=n };
            for nn in ns {
                if !check_coef_condition(kk, nn) {
                    return (false, format!("fails at k={kk} n={nn}"));
                }
            }
        }
        (true, "the new twist fixes the double-suspension image".into())
    });
    let mut degree_reports = Vec::new();
    let ks: Vec<u32> = if check_all { (0..=k).collect() } else { vec![k] };
    for kk in &ks {
        let window = (kk + 5).max(6);
        let sys = tensor_power_system(*kk, window);
        let rep = degree(&sys, 2 * k + 4).map_err(|e| e.to_string())?;
        let pass = rep.twisted == DegreeOutcome::Computed { degree: *kk as i64, at: 0 };
        report.push(
            format!("degree_tensor_power_{kk}"),
            pass,
            format!("twisted: {:?}, untwisted: {:?}", rep.twisted, rep.untwisted),
            0,
        );
        degree_reports.push(json!({
            "k": kk,
            "twisted": format!("{:?}", rep.twisted),
            "untwisted": format!("{:?}", rep.untwisted),
        }));
    }
    report.params = json!({ "k": k, "n": n, "check_all": check_all, "degrees": degree_reports });
    Ok(report)
}

#[allow(clippy::too_many_arguments)]
fn ranges_report(
    theorem: &str,
    g: Option<i64>,
    k: Option<i64>,
    split: bool,
    n: Option<i64>,
    kind: Option<&str>,
    at: i64,
    nu: u8,
) -> Result<Report, String> {
    let mut report = Report::new(
        "ranges",
        json!({ "theorem": theorem, "g": g, "k": k, "split": split, "n": n, "kind": kind }),
    );
    match theorem {
        "A" | "a" => {
            let g = g.ok_or("--theorem A needs --g")?;
            if g < 0 {
                return Err("need g >= 0".into());
            }
            let (b, ge) = range_theorem_a(g);
            report.check("ranges_computed", || {
                (
                    true,
                    format!(
                        "boundary: injective, iso<= {}; genus: epi<= {} iso<= {}",
                        b.iso, ge.epi, ge.iso
                    ),
                )
            });
            report.params = json!({
                "theorem": "A", "g": g,
                "boundary": { "epi": b.epi, "iso": b.iso, "always_injective": b.always_injective },
                "genus": { "epi": ge.epi, "iso": ge.iso },
            });
        }
        "B" | "b" => {
            let g = g.ok_or("--theorem B needs --g")?;
            let k = k.ok_or("--theorem B needs --k")?;
            if g < 0 || k < 0 {
                return Err("need g, k >= 0".into());
            }
            let (b, ge) = range_theorem_b(g, k, split);
            report.check("ranges_computed", || {
                (
                    true,
                    format!(
                        "boundary: epi<= {} iso<= {}; genus: epi<= {} iso<= {}",
                        b.epi, b.iso, ge.epi, ge.iso
                    ),
                )
            });
            report.params = json!({
                "theorem": "B", "g": g, "k": k, "split": split,
                "boundary": { "epi": b.epi, "iso": b.iso },
                "genus": { "epi": ge.epi, "iso": ge.iso },
            });
        }
        "stab" => {
            let n = n.ok_or("--theorem stab needs --n")?;
            if n < 0 {
                return Err("need n >= 0".into());
            }
            let kind = CoefficientKind::parse(kind.unwrap_or("constant"))
                .map_err(|e| e.to_string())?;
            let k = k.unwrap_or(0);
            let r = range_stab(n, k, at, kind).map_err(|e| e.to_string())?;
            report.check("ranges_computed", || {
                (true, format!("{}: epi<= {} iso<= {}", kind.label(), r.epi, r.iso))
            });
            report.params = json!({
                "theorem": "stab", "n": n, "k": k, "kind": kind.label(), "at": at,
                "epi": r.epi, "iso": r.iso,
            });
        }
        "connectivity" => {
            let g = g.ok_or("--theorem connectivity needs --g")?;
            if !(nu == 1 || nu == 2) {
                return Err("--nu must be 1 or 2".into());
            }
            let bound = connectivity_bound(g, nu);
            report.check("ranges_computed", || (true, format!("bound {bound}")));
            report.params = json!({ "theorem": "connectivity", "g": g, "nu": nu, "bound": bound });
        }
        other => return Err(format!("unknown theorem `{other}` (expected A, B, stab, connectivity)")),
    }
    Ok(report)
}

pub use mcgstab_core::ranges::render_range_table;

fn all_report(seed: u64) -> Result<Report, String> {
    let mut all = Report::new("all", json!({ "seed": seed }));
    let mut absorb = |prefix: &str, sub: Report| {
        for c in sub.checks {
            all.push(format!("{prefix}.{}", c.name), c.pass, c.detail, c.elapsed_ms);
        }
    };
    absorb("braid", verify_braid_report(8, seed)?);
    absorb("yb", verify_yb_report()?);
    absorb("block", verify_block_report(6)?);
    absorb("refute", refute_report(3)?);
    absorb("curve", search_report(3, 8)?);
    absorb("curve", search_report(2, 8)?);

    let mut surf = Report::new("surface", json!({}));
    surf.check("closed_form_sweep", || {
        for m in 1..=30u32 {
            let inv = CombSurface::disk_sum(m).invariants();
            let (g, r) = surface_type(m);
            if (inv.genus, inv.boundaries) != (g, r) || inv.euler != 2 - m as i64 {
                return (false, format!("mismatch at m={m}"));
            }
        }
        (true, "oracle matches closed form for m <= 30".into())
    });
    surf.check("cut_grid", || {
        for g in 0..=10i64 {
            for nu in [1u8, 2] {
                for r in (nu as i64)..=4 {
                    for p in 0..=(2 * g + nu as i64 - 2).max(0) {
                        match cut_formula(g, r, nu, p as u32) {
                            Ok(c) => {
                                if !c.genus_agrees {
                                    return (false, format!("genus at g={g} r={r} nu={nu} p={p}"));
                                }
                                let expect_r = if p % 2 == 1 {
                                    r
                                } else if nu == 1 {
                                    r + 1
                                } else {
                                    r - 1
                                };
                                if c.oracle.boundaries != expect_r {
                                    return (false, format!("r' at g={g} r={r} nu={nu} p={p}"));
                                }
                            }
                            Err(_) => continue,
                        }
                    }
                }
            }
        }
        (true, "genus formula matches the oracle on the full grid".into())
    });
    absorb("surface", surf);

    let mut dest = Report::new("destab", json!({}));
    let fam = symmetric_family(5);
    let fam_id = symmetric_identity_family(5);
    dest.check("injective_words_homology", || {
        let expected = [(3u32, 2i64), (4, 9), (5, 44)];
        for (n, top_rank) in expected {
            let built = match build_w(&fam, n, 0, n - 1) {
                Ok(b) => b,
                Err(e) => return (false, e.to_string()),
            };
            let h = homology(&chain_complex(&built.complex, true));
            for d in &h.degrees {
                let want = if d.degree + 1 == n as usize { top_rank } else { 0 };
                if d.betti as i64 != want || !d.torsion.is_empty() {
                    return (false, format!("n={n} degree {}", d.degree));
                }
            }
            if h.connectivity_homological != n as i64 - 2 {
                return (false, format!("connectivity at n={n}"));
            }
        }
        (true, "top ranks 2, 9, 44 with nothing below".into())
    });
    dest.check("identity_yb_components", || {
        for n in 2..=5u32 {
            let built = build_w(&fam_id, n, 0, 1).unwrap();
            if pi0(&built.complex) != n as usize {
                return (false, format!("n={n}"));
            }
        }
        (true, "component count is the subgroup index".into())
    });
    dest.check("generation_criterion_corpus", || {
        for family in [&fam, &fam_id, &cyclic_family(5), &trivial_family(5)] {
            for n in 2..=5u32 {
                let built = build_w(family, n, 0, 1).unwrap();
                let connected = pi0(&built.complex) == 1;
                match barucco_check(family, n, 0) {
                    Ok(gen) if gen == connected => {}
                    Ok(_) => return (false, format!("disagreement at n={n}")),
                    Err(e) => return (false, e.to_string()),
                }
            }
        }
        (true, "criterion agrees with connectivity on the corpus".into())
    });
    absorb("destab", dest);

    absorb("coeff", coeff_report(3, 8, true)?);

    let mut rng = Report::new("ranges", json!({}));
    rng.check("sample_values", || {
        let (b3, g3) = range_theorem_a(3);
        let (b6, _) = range_theorem_b(6, 1, false);
        let s9 = range_stab(9, 0, 0, CoefficientKind::Constant).unwrap();
        let ok = b3.iso == 2
            && g3.epi == 2
            && g3.iso == 1
            && b6.epi == 2
            && s9.epi == 3
            && connectivity_bound(1, 2) == -1
            && connectivity_bound(0, 1) == -2;
        (ok, "spot values across the three theorems".into())
    });
    absorb("ranges", rng);

    let mut rep = Report::new("report", json!({}));
    rep.check("schema_roundtrip", || {
        let mut r = Report::new("probe", json!({ "x": 1 }));
        r.push("a", true, "b", 0);
        let text = serde_json::to_string(&r).unwrap();
        match serde_json::from_str::<Report>(&text) {
            Ok(back) => (back == r, "serialize, parse, compare".into()),
            Err(e) => (false, e.to_string()),
        }
    });
    absorb("report", rep);
    Ok(all)
}
