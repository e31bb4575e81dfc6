//! Acceptance run: one line per criterion, exact checks against independent
//! oracles plus frozen baselines. Exits nonzero if any criterion fails.

use std::collections::HashSet;
use std::sync::Arc;
use std::time::{Duration, Instant};

use coxwalls::algebra::{catalog, CoxeterMatrix, CoxeterSystem, Root, Scalar};
use coxwalls::chains::{
    classify_chain, classify_dihedral_pair, estimate_epsilon, maximally_convex_chain, ChainContext, PairKind,
};
use coxwalls::cubes::{check_deep_cube_affine, co_hopf, VertexSpace};
use coxwalls::roots::{
    canonical_simple_system, constant_kappa, constant_lambda_fin, constant_lambda_max, enumerate_roots, RootInventory,
};
use coxwalls::walls::{chamber_side, strictly_inside, ChamberBall, WallSpace};
use coxwalls::Error;

type Check = Result<String, String>;

/// Runtime limits in seconds, per criterion.
const LIMITS: [u64; 12] = [5, 60, 10, 10, 300, 300, 300, 300, 300, 300, 1, 300];

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        if !$cond {
            return Err(format!($($msg)+));
        }
    };
}

fn sys(m: &CoxeterMatrix) -> Arc<CoxeterSystem> {
    Arc::new(CoxeterSystem::new(m.clone()))
}

fn inventory(m: &CoxeterMatrix, depth: usize) -> RootInventory {
    RootInventory::build(sys(m), depth, 1_000_000).unwrap()
}

/// Nested pairs `a ⊊ b` of positive roots of the inventory, by index.
fn nested_pairs(inv: &RootInventory) -> Vec<(usize, usize)> {
    let mut out = Vec::new();
    for i in 0..inv.len() {
        for j in 0..inv.len() {
            if i != j && strictly_inside(inv, inv.root(i), inv.root(j)) {
                out.push((i, j));
            }
        }
    }
    out
}

fn c1_root_counts() -> Check {
    let cases = [
        ("A2", catalog::a(2), 3),
        ("A3", catalog::a(3), 6),
        ("B2", catalog::b(2), 4),
        ("B3", catalog::b(3), 9),
        ("H3", catalog::h3(), 15),
    ];
    for (name, m, expected) in cases {
        let inv = enumerate_roots(&m, 64).map_err(|e| e.to_string())?;
        ensure!(inv.is_complete(), "{name}: enumeration did not stabilize");
        // orbit closure of the simple roots under simple reflections
        let s = sys(&m);
        let mut seen: HashSet<Root> = s.simple_roots().into_iter().collect();
        let mut todo: Vec<Root> = seen.iter().cloned().collect();
        while let Some(r) = todo.pop() {
            for k in 0..s.rank() {
                let x = s.reflect_simple(k, &r);
                if seen.insert(x.clone()) {
                    todo.push(x);
                }
            }
        }
        let positive = seen.iter().filter(|r| r.is_positive()).count();
        ensure!(inv.len() == expected && positive == expected, "{name}: {} roots, oracle {positive}", inv.len());
    }
    Ok("A2=3 A3=6 B2=4 B3=9 H3=15".into())
}

fn c2_form_identities() -> Check {
    let mut pairs = 0usize;
    for m in [catalog::affine_a(1), catalog::affine_a(2), catalog::triangle(2, 3, 7), catalog::b(3)] {
        let inv = inventory(&m, 6);
        let s = inv.system();
        for a in inv.roots() {
            ensure!(s.reflect(a, &s.reflect(a, a)) == *a, "reflection is not an involution");
            for b in inv.roots() {
                pairs += 1;
                let v = s.form(a, b);
                ensure!(s.reflect(a, &s.reflect(a, b)) == *b, "r_a r_a ≠ 1 on {b}");
                for k in 0..s.rank() {
                    let (sa, sb) = (s.reflect_simple(k, a), s.reflect_simple(k, b));
                    ensure!(s.form(&sa, &sb) == v, "form not invariant under s{k}");
                    // r_{s a} = s r_a s
                    let lhs = s.reflect(&sa, b);
                    let rhs = s.reflect_simple(k, &s.reflect(a, &s.reflect_simple(k, b)));
                    ensure!(lhs == rhs, "conjugation identity fails for s{k}");
                }
            }
        }
    }
    Ok(format!("{pairs} ordered pairs"))
}

fn c3_affine_a1_chains() -> Check {
    let m = catalog::affine_a(1);
    let space = WallSpace::new(&m, 20).map_err(|e| e.to_string())?;
    let inv = space.inventory();
    let s = inv.system();
    let one = s.field().one();
    let ctx = ChainContext { kappa: constant_kappa(&m).value, epsilon: None };
    let pairs = nested_pairs(inv);
    for &(i, j) in &pairs {
        ensure!(inv.form(i, j) == one, "nested pair with value ≠ 1");
        let chain = maximally_convex_chain(&space, inv.root(i), inv.root(j)).map_err(|e| e.to_string())?;
        let v = classify_chain(&space, &ctx, &chain).map_err(|e| e.to_string())?;
        let w = v.dihedral_witness.as_ref().ok_or("no dihedral witness")?;
        ensure!(v.alternative == 2, "alternative {}", v.alternative);
        ensure!(w.len() == 2 && s.form(&w[0], &w[1]) == -one.clone(), "witness is not infinite dihedral");
    }
    Ok(format!("{} nested pairs and chains", pairs.len()))
}

/// Largest `x` in `a = x p + y q` over roots of a rank-2 finite group with
/// `|(p, q)| < 1`, by Cramer's rule over every root triple.
fn lambda_fin_rank2(m: &CoxeterMatrix) -> Scalar {
    let inv = inventory(m, 64);
    let s = inv.system();
    let one = s.field().one();
    let all: Vec<Root> = inv.roots().iter().flat_map(|r| [r.clone(), -r]).collect();
    let c = |r: &Root, k: usize| r.coords()[k].clone();
    let mut best = s.field().zero();
    for p in &all {
        for q in &all {
            if s.form(p, q).abs() >= one {
                continue;
            }
            let det = c(p, 0) * c(q, 1) - c(p, 1) * c(q, 0);
            if det.is_zero() {
                continue;
            }
            for a in &all {
                let x = (c(a, 0) * c(q, 1) - c(a, 1) * c(q, 0)) * det.inverse();
                if x > best {
                    best = x;
                }
            }
        }
    }
    best
}

fn c4_constants() -> Check {
    let kappa_oracle = |m: &CoxeterMatrix, depth: usize| {
        let inv = inventory(m, depth);
        let one = inv.system().field().one();
        let mut best = inv.system().field().zero();
        for i in 0..inv.len() {
            for j in 0..inv.len() {
                let v = inv.form(i, j).abs();
                if v < one && v > best {
                    best = v;
                }
            }
        }
        best
    };
    for (name, m, depth) in [("A2", catalog::a(2), 8), ("B2", catalog::b(2), 8), ("Ã2", catalog::affine_a(2), 8)] {
        ensure!(constant_kappa(&m).value == kappa_oracle(&m, depth), "κ({name}) disagrees with exhaustion");
    }
    let b2 = sys(&catalog::b(2));
    let half = b2.field().rational(1, 2);
    let sqrt2 = b2.field().cos_pi_over(4).unwrap() * b2.field().int(2);
    ensure!(constant_kappa(&catalog::a(2)).value == sys(&catalog::a(2)).field().rational(1, 2), "κ(A2) ≠ 1/2");
    ensure!(constant_kappa(&catalog::b(2)).value == &sqrt2 * &half, "κ(B2) ≠ √2/2");
    ensure!(constant_kappa(&catalog::affine_a(2)).value == half, "κ(Ã2) ≠ 1/2");
    let lf = constant_lambda_fin(&catalog::b(2)).value;
    ensure!(lf == sqrt2 && lf == lambda_fin_rank2(&catalog::b(2)), "λ_fin(B2) ≠ √2");
    // small roots of Ã1 by exhaustion: no root strictly inside
    let inv = inventory(&catalog::affine_a(1), 12);
    let mut lm = inv.system().field().zero();
    for k in 0..inv.len() {
        if !(0..inv.len()).any(|j| strictly_inside(&inv, inv.root(j), inv.root(k))) {
            for c in inv.root(k).coords() {
                lm = lm.max(c.clone());
            }
        }
    }
    let lmax = constant_lambda_max(&catalog::affine_a(1)).map_err(|e| e.to_string())?.value;
    ensure!(lmax.is_one() && lmax == lm, "λ_max(Ã1) = {lmax}, oracle {lm}");
    Ok("κ(A2)=1/2 κ(B2)=√2/2 κ(Ã2)=1/2 λ_fin(B2)=√2 λ_max(Ã1)=1".into())
}

fn c5_triples_and_chains() -> Check {
    let (mut triples, mut chains) = (0usize, 0usize);
    for m in [catalog::affine_a(2), catalog::triangle(2, 3, 7)] {
        let space = WallSpace::new(&m, 12).map_err(|e| e.to_string())?;
        let inv = space.inventory();
        let s = inv.system();
        let f = s.field();
        let (one, kappa) = (f.one(), constant_kappa(&m).value);
        let n = inv.up_to_depth(6).end;
        let inside = |x: &Root, y: &Root| x == y || strictly_inside(inv, x, y);
        // signed half-spaces of depth at most 6
        let h: Vec<Root> = (0..n).flat_map(|i| [inv.root(i).clone(), -inv.root(i)]).collect();
        let mut pairs = Vec::new();
        for a in 0..h.len() {
            for b in 0..h.len() {
                if a != b && strictly_inside(inv, &h[a], &h[b]) {
                    pairs.push((a, b));
                }
            }
        }
        let within: HashSet<(usize, usize)> = pairs.iter().copied().collect();
        for &(a, b) in &pairs {
            for c in 0..h.len() {
                if !within.contains(&(b, c)) {
                    continue;
                }
                triples += 1;
                let (ra, rb, rc) = (&h[a], &h[b], &h[c]);
                let (ab, bc, ac) = (s.form(ra, rb), s.form(rb, rc), s.form(ra, rc));
                ensure!(ac >= ab && ac >= bc, "triple (i) fails");
                let rba = s.reflect(rb, ra);
                if s.form(&rba, rc) > -one.clone() {
                    ensure!(ac >= f.int(2) * &ab - &kappa, "triple (ii) fails");
                } else {
                    let rbc = s.reflect(rb, rc);
                    let first = inside(rb, &-&rba) && inside(&-&rba, rc);
                    let second = inside(ra, &-&rbc) && inside(&-&rbc, rb);
                    ensure!(first || second, "triple (iii) fails");
                }
            }
            let chain = maximally_convex_chain(&space, &h[a], &h[b]).map_err(|e| e.to_string())?;
            let r = &chain.roots;
            if r.len() > 8 {
                continue;
            }
            chains += 1;
            let len = r.len() - 1;
            for j in 1..=len {
                let prev = s.form(&r[0], &r[j - 1]);
                let cur = s.form(&r[0], &r[j]);
                if prev == one && cur != one {
                    ensure!(cur >= f.int(j as i64) * (&one - &kappa), "chain (i) fails at j={j}");
                }
                if cur > one {
                    let e = &cur - &one;
                    let bound = &one + &(f.rational(len as i64, 2 * j as i64) * e);
                    ensure!(s.form(&r[0], &r[len]) > bound, "chain (ii) fails at j={j}");
                }
            }
        }
    }
    Ok(format!("{triples} nested triples, {chains} maximally convex chains"))
}

fn c6_separators() -> Check {
    // frozen on first run
    let baselines = [("Ã2", catalog::affine_a(2), 3usize), ("(2,3,7)", catalog::triangle(2, 3, 7), 6)];
    let mut notes = Vec::new();
    for (name, m, q_frozen) in baselines {
        let space = WallSpace::new(&m, 12).map_err(|e| e.to_string())?;
        let q5 = space.estimate_q(5).map_err(|e| e.to_string())?.value;
        let q6 = space.estimate_q(6).map_err(|e| e.to_string())?.value;
        ensure!(q5 == q6, "{name}: Q̂ moved from {q5} to {q6}");
        ensure!(q6 == q_frozen, "{name}: Q̂ = {q6}, baseline {q_frozen}");
        let inv = space.inventory();
        let n = inv.up_to_depth(6).end;
        let mut checked = 0;
        for i in 0..n {
            for j in i + 1..n {
                if space.table().crosses(i, j) {
                    continue;
                }
                let sep = space.find_separating_wall(inv.root(i), inv.root(j)).map_err(|e| e.to_string())?;
                if sep.distance.distance <= q6 {
                    continue;
                }
                let h = sep.separator.as_ref().ok_or_else(|| format!("{name}: distant pair without separator"))?;
                let (x, y) = (&sep.distance.x, &sep.distance.y);
                ensure!(chamber_side(x, &sep.a) && chamber_side(y, &sep.b), "{name}: certificate chambers misplaced");
                ensure!(chamber_side(x, h) && !chamber_side(y, h), "{name}: separator fails its certificate");
                checked += 1;
            }
        }
        notes.push(format!("{name} Q̂={q6} ({checked} separated pairs)"));
    }
    Ok(notes.join(", "))
}

fn c7_affine_pairs() -> Check {
    let mut notes = Vec::new();
    for (name, m) in [("Ã2", catalog::affine_a(2)), ("(2,3,7)", catalog::triangle(2, 3, 7))] {
        let space = WallSpace::new(&m, 6).map_err(|e| e.to_string())?;
        let eps = estimate_epsilon(&space);
        let inv = space.inventory();
        let s = inv.system();
        let one = s.field().one();
        let (mut affine, mut above) = (0, 0);
        for (i, j) in nested_pairs(inv) {
            let (a, b) = (inv.root(i), inv.root(j));
            let v = s.form(a, b);
            if v == one {
                let kind = classify_dihedral_pair(&space, &eps, a, b).map_err(|e| e.to_string())?;
                let cs = canonical_simple_system(inv, &[a.clone(), b.clone()]).map_err(|e| e.to_string())?;
                ensure!(kind == PairKind::AffineClosure, "{name}: value 1 without affine closure");
                ensure!(cs.rank() == 2 && cs.matrix.m(0, 1).is_none(), "{name}: not infinite dihedral");
                affine += 1;
            } else {
                let e = eps.value.as_ref().ok_or_else(|| format!("{name}: value above 1 but ε̂ undefined"))?;
                ensure!(v >= &one + e, "{name}: value inside (1, 1+ε̂)");
                above += 1;
            }
        }
        notes.push(format!("{name}: {affine} affine, {above} above 1+ε̂"));
    }
    let m = catalog::triangle(2, 3, 7);
    let e5 = estimate_epsilon(&WallSpace::new(&m, 5).map_err(|e| e.to_string())?).value;
    let e6 = estimate_epsilon(&WallSpace::new(&m, 6).map_err(|e| e.to_string())?).value;
    let e6 = e6.ok_or("ε̂(2,3,7) undefined")?;
    ensure!(e5.as_ref() == Some(&e6) && e6.is_positive(), "ε̂ not stable between depths 5 and 6");
    notes.push(format!("ε̂(2,3,7) = {}", e6.to_decimal(6)));
    Ok(notes.join(", "))
}

fn c8_orientation() -> Check {
    let mut pairs = 0;
    for (m, radius) in
        [(catalog::affine_a(1), 14), (catalog::affine_a(2), 12), (catalog::triangle(2, 3, 7), 18), (catalog::b(3), 9)]
    {
        let inv = inventory(&m, radius);
        let ball = ChamberBall::new(&inv, radius).map_err(|e| e.to_string())?;
        let n = inv.up_to_depth(6).end;
        let signed: Vec<Root> = (0..n).flat_map(|i| [inv.root(i).clone(), -inv.root(i)]).collect();
        let sides: Vec<Vec<bool>> =
            signed.iter().map(|h| ball.elements().iter().map(|w| chamber_side(w, h)).collect()).collect();
        for (x, a) in signed.iter().enumerate() {
            for (y, b) in signed.iter().enumerate() {
                if a.positive() == b.positive() {
                    continue;
                }
                let subset = sides[x].iter().zip(&sides[y]).all(|(&p, &q)| !p || q);
                ensure!(strictly_inside(&inv, a, b) == subset, "orientation disagrees on {a} ⊊ {b}");
                pairs += subset as usize;
            }
        }
    }
    Ok(format!("{pairs} nested signed pairs agree"))
}

fn c9_cube_complex() -> Check {
    let ra = catalog::with_edges(3, &[(0, 1, 0), (1, 2, 0)]);
    let vs = VertexSpace::new(&ra, 6).map_err(|e| e.to_string())?;
    let vertices = vs.vertices().map_err(|e| e.to_string())?;
    let ball = vs.space().ball();
    let cayley: HashSet<_> =
        (0..ball.len()).filter(|&i| ball.element(i).length() <= 6).map(|i| ball.separators(i).clone()).collect();
    let found: HashSet<_> = vertices.iter().cloned().collect();
    ensure!(found == cayley && found.len() == 85, "right-angled: {} vertices, {} Cayley", found.len(), cayley.len());

    let vs = VertexSpace::new(&catalog::a(2), 3).map_err(|e| e.to_string())?;
    let v = vs.vertices().map_err(|e| e.to_string())?;
    let cubes = vs.cubes(&v).map_err(|e| e.to_string())?;
    ensure!(v.len() == 8 && cubes.iter().filter(|c| c.walls.len() == 3).count() == 1, "A2: no 3-cube");

    let sizes = |m: &CoxeterMatrix, r: usize| -> Result<Vec<usize>, String> {
        let vs = VertexSpace::new(m, r).map_err(|e| e.to_string())?;
        let v = vs.vertices().map_err(|e| e.to_string())?;
        let inside = vs.chamber_vertices(&v);
        Ok((0..=r).map(|k| inside.iter().filter(|d| d.count_ones(..) <= k).count()).collect())
    };
    let a2 = sizes(&catalog::affine_a(2), 5)?;
    ensure!(a2 == [1, 4, 10, 20, 35, 56], "Ã2 chamber sizes {a2:?}");
    let t = sizes(&catalog::triangle(2, 3, 7), 13)?;
    ensure!(t[12] == 164 && t[13] == 164 && t[11] < t[12], "(2,3,7) chamber sizes {t:?}");
    Ok(format!("right-angled 85 = Cayley ball, A2 3-cube, Ã2 {a2:?}, (2,3,7) stable at {}", t[13]))
}

fn c10_deep_cubes() -> Check {
    let vs = VertexSpace::new(&catalog::affine_a(2), 6).map_err(|e| e.to_string())?;
    let v = vs.vertices().map_err(|e| e.to_string())?;
    let cubes = vs.cubes(&v).map_err(|e| e.to_string())?;
    let walls: HashSet<Vec<usize>> = cubes.into_iter().map(|c| c.walls).collect();
    let mut deep = 0;
    for w in &walls {
        let r = check_deep_cube_affine(&vs, w, 2).map_err(|e| e.to_string())?;
        if r.claimed {
            deep += 1;
            ensure!(r.affine_rank3 == Some(true), "deep cube without an affine rank-3 component");
        }
    }
    ensure!(deep > 0, "no cube at distance ≥ 2");
    Ok(format!("{deep} of {} wall sets at distance ≥ 2, all affine rank 3", walls.len()))
}

fn c11_co_hopf() -> Check {
    let is = |m: CoxeterMatrix| co_hopf(&m).map(|r| r.co_hopfian);
    ensure!(is(catalog::affine_a(2)) == Ok(false), "Ã2");
    ensure!(is(catalog::a(2)) == Ok(true), "A2");
    ensure!(is(catalog::triangle(2, 3, 7)) == Ok(true), "(2,3,7)");
    ensure!(is(catalog::affine_a(1)) == Err(Error::Not2Spherical), "Ã1 accepted");
    ensure!(is(catalog::with_edges(3, &[(0, 1, 0)])) == Err(Error::Not2Spherical), "∞ entry accepted");
    Ok("Ã2 false, A2 true, (2,3,7) true, ∞ → Not2Spherical".into())
}

fn c12_determinism() -> Check {
    let dir = std::env::temp_dir().join(format!("coxwalls-acceptance-{}", std::process::id()));
    std::fs::create_dir_all(&dir).map_err(|e| e.to_string())?;
    let file = |name: &str, m: &CoxeterMatrix| {
        let p = dir.join(name);
        std::fs::write(&p, m.to_json()).unwrap();
        p.to_string_lossy().into_owned()
    };
    let a1 = file("a1t.json", &catalog::affine_a(1));
    let a2 = file("a2t.json", &catalog::affine_a(2));
    let t = file("237.json", &catalog::triangle(2, 3, 7));
    let runs: Vec<Vec<&str>> = vec![
        vec!["roots", "--matrix", &t, "--depth", "5"],
        vec!["constants", "--matrix", &t, "--depth", "5"],
        vec!["chain-check", "--matrix", &a1, "--roots", "[0,1],[1,2],[2,3]"],
        vec!["separate", "--matrix", &a1, "--a", "[0,1]", "--b", "[2,3]"],
        vec![
            "ladder-check",
            "--matrix",
            &a2,
            "--depth",
            "8",
            "--mu",
            "1,0,0",
            "--mu-prime",
            "0,1,0",
            "--walls",
            "[1,1,0];[2,2,1]",
        ],
        vec!["dihedral-pair", "--matrix", &t, "--a", "@0", "--b", "@2"],
        vec!["cubes", "--matrix", &a2, "--radius", "4", "--count-orbits", "--chamber", "", "--deep-check", "2"],
        vec!["classes", "--matrix", &a2, "--depth", "2"],
        vec!["cohopf", "--matrix", &a2],
        vec!["cohopf", "--matrix", &a1, "--format", "text"],
    ];
    for args in &runs {
        let argv = std::iter::once("coxwalls").chain(args.iter().copied());
        let first = coxwalls_cli::run_command(argv.clone());
        let second = coxwalls_cli::run_command(argv);
        ensure!(first.report == second.report, "{} differs between runs", args[0]);
        ensure!(first.code == second.code, "{} exit codes differ", args[0]);
        ensure!(
            first.code == 0 || args[2] == a1 && args[0] == "cohopf",
            "{} exited {}: {}",
            args[0],
            first.code,
            first.report
        );
    }
    let _ = std::fs::remove_dir_all(&dir);
    Ok(format!("{} commands byte-identical", runs.len()))
}

fn main() {
    let criteria: [(&str, fn() -> Check); 12] = [
        ("root enumeration", c1_root_counts),
        ("form identities", c2_form_identities),
        ("Ã1 chain alternative", c3_affine_a1_chains),
        ("constants", c4_constants),
        ("triple and chain inequalities", c5_triples_and_chains),
        ("separating walls", c6_separators),
        ("affine pairs", c7_affine_pairs),
        ("nesting orientation", c8_orientation),
        ("cube complex", c9_cube_complex),
        ("deep cubes", c10_deep_cubes),
        ("co-Hopf", c11_co_hopf),
        ("determinism", c12_determinism),
    ];
    let mut failed = 0;
    for (k, (name, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let result = run();
        let took = start.elapsed();
        let limit = Duration::from_secs(LIMITS[k]);
        let (ok, detail) = match result {
            Ok(d) if took <= limit => (true, d),
            Ok(d) => (false, format!("{d}; over the {} s limit", LIMITS[k])),
            Err(e) => (false, e),
        };
        failed += !ok as usize;
        println!(
            "criterion {:>2} {:<30} {} ({:.2} s): {detail}",
            k + 1,
            name,
            if ok { "PASS" } else { "FAIL" },
            took.as_secs_f64()
        );
    }
    println!("{} of 12 criteria passed", 12 - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
