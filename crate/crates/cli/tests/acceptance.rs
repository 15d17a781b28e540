//! Acceptance suite. Runs without the test harness and prints one line per
//! criterion; exits nonzero if any criterion fails.

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::Command;
use std::sync::Mutex;
use std::time::Instant;

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::Rng;
use spannerdraw_core::generators::{path, random_connected, random_connected_planar, random_drawing, random_tree, rng};
use spannerdraw_core::geom::{int, rat};
use spannerdraw_core::graph::{hamiltonian_path_exists, is_connected};
use spannerdraw_core::interval::sqrt_rational;
use spannerdraw_core::layout::{
    draw_planar_spanner, draw_proper_spanner, draw_tree_planar_with_stats, draw_tree_proper, proper_tree_width_bound,
};
use spannerdraw_core::metrics::{
    bounding_box, edge_lengths_sq, is_planar_drawing, min_pairwise_distance_sq, no_three_collinear, spanning_ratio,
};
use spannerdraw_core::verify::{annulus_bound_check, sr1_witness, Verdict};
use spannerdraw_core::{Drawing, Epsilon, Ext, Graph, Interval, Point, Rational, RootedTree};

/// Drawings from criteria 1 to 5 with their measured upper ratio, for the
/// second half of criterion 6.
static PRODUCED: Mutex<Vec<(Drawing, Rational)>> = Mutex::new(Vec::new());

fn tol() -> Rational {
    rat(1, 1_000_000_000)
}

fn hi_of(iv: &Interval) -> Rational {
    match &iv.hi {
        Ext::Finite(r) => r.clone(),
        Ext::Infinite => panic!("unexpected infinite spanning ratio"),
    }
}

fn measured(d: &Drawing) -> Rational {
    let iv = spanning_ratio(d, &tol()).expect("spanning ratio");
    let rel = iv.relative_width().expect("finite enclosure");
    assert!(rel <= tol(), "enclosure wider than requested");
    hi_of(&iv)
}

fn keep(d: &Drawing, hi: &Rational) {
    PRODUCED.lock().unwrap().push((d.clone(), hi.clone()));
}

fn f(r: &Rational) -> f64 {
    r.to_f64().unwrap()
}

fn criterion_1() -> String {
    let mut worst = 0.0f64;
    let mut count = 0;
    for n in [10, 20, 40] {
        for (num, den) in [(1, 1), (1, 2), (1, 10)] {
            let eps = Epsilon::from_ratio(num, den).unwrap();
            for seed in 0..20 {
                let g = random_connected_planar(n, 0.4, &mut rng(1000 * n as u64 + seed));
                let d = draw_planar_spanner(&g, &eps).unwrap();
                assert!(is_planar_drawing(&d), "n = {n}, seed {seed}: not planar");
                let hi = measured(&d);
                assert!(hi < eps.spanner_bound(), "n = {n}, eps = {num}/{den}, seed {seed}: ratio {}", f(&hi));
                worst = worst.max(f(&(&hi - Rational::one())) / f(eps.value()));
                keep(&d, &hi);
                count += 1;
            }
        }
    }
    format!("{count} drawings planar, max (ratio - 1) / eps = {worst:.4}")
}

fn criterion_2() -> String {
    let eps = Epsilon::from_ratio(1, 1).unwrap();
    let d = draw_planar_spanner(&path(3), &eps).unwrap();
    let g = d.graph();
    let (a, b) = (0..3)
        .flat_map(|i| (i + 1..3).map(move |j| (i, j)))
        .find(|&(i, j)| !g.has_edge(i, j))
        .unwrap();
    let mid = 3 - a - b;
    let len = |u: usize, v: usize| sqrt_rational(&d.point(u).dist_sq(d.point(v)), 128);
    let (l1, l2, l3) = (len(a, mid), len(mid, b), len(a, b));
    let lo = (&l1.0 + &l2.0) / &l3.1;
    let hi = (&l1.1 + &l2.1) / &l3.0;
    let target = rat(3, 2);
    let eps12 = rat(1, 1_000_000_000_000);
    assert!(&hi - &lo <= eps12, "enclosure too wide");
    assert!((&lo - &target).abs() <= eps12 && (&hi - &target).abs() <= eps12, "ratio not 3/2");
    let whole = measured(&d);
    assert!((&whole - &target).abs() <= eps12);
    keep(&d, &whole);
    format!("pair ({a},{b}) ratio in [{:.15}, {:.15}]", f(&lo), f(&hi))
}

fn criterion_3() -> String {
    let mut worst = 0.0f64;
    for i in 0..20u64 {
        let n = 2 + (i as usize * 38) / 19;
        let g = random_connected(n, 0.15, &mut rng(300 + i));
        for (num, den) in [(1, 1), (1, 2)] {
            let eps = Epsilon::from_ratio(num, den).unwrap();
            let d = draw_proper_spanner(&g, &eps).unwrap();
            assert!(no_three_collinear(&d), "seed {i}: collinear triple");
            let hi = measured(&d);
            assert!(hi < eps.spanner_bound(), "seed {i}: ratio {}", f(&hi));
            worst = worst.max(f(&(&hi - Rational::one())) / f(eps.value()));
            keep(&d, &hi);
        }
    }
    format!("20 graphs x 2 eps, no three collinear, max (ratio - 1) / eps = {worst:.4}")
}

fn criterion_4() -> String {
    let eps = Epsilon::from_ratio(1, 1).unwrap();
    let half = Epsilon::from_ratio(1, 2).unwrap();
    let mut above = 0;
    let mut worst = 0.0f64;
    for i in 0..50u64 {
        let deg = 3 + (i % 3) as usize;
        let n = 4 + (i as usize * 196) / 49;
        let t = RootedTree::from_tree_graph(random_tree(n, deg, &mut rng(400 + i)), 0).unwrap();
        let d = draw_tree_proper(&t, &eps).unwrap();
        let hi = measured(&d);
        assert!(hi <= eps.tree_bound(), "seed {i}: ratio {} above (gamma+2)/gamma", f(&hi));
        if hi > rat(3, 2) {
            above += 1;
        }
        worst = worst.max(f(&hi));
        assert!(min_pairwise_distance_sq(&d).unwrap() >= int(1), "seed {i}: vertices closer than 1");
        assert!(no_three_collinear(&d));
        let w = f(&bounding_box(&d).unwrap().width());
        let bound = proper_tree_width_bound(n, t.max_degree(), eps.gamma(), 1.0);
        assert!(w <= bound, "seed {i}: width {w} above {bound}");
        keep(&d, &hi);
        // At eps = 1/2 the guaranteed bound is 3/2 itself.
        let d2 = draw_tree_proper(&t, &half).unwrap();
        assert!(measured(&d2) <= rat(3, 2), "seed {i}: eps = 1/2 drawing above 3/2");
    }
    format!(
        "50 trees within (gamma+2)/gamma = 2 at eps = 1 (max {worst:.4}, {above} above 1.5); \
         all within 1.5 at eps = 1/2"
    )
}

fn criterion_5() -> String {
    let eps = Epsilon::from_ratio(1, 1).unwrap();
    let half = Epsilon::from_ratio(1, 2).unwrap();
    let mut above = 0;
    let mut worst = 0.0f64;
    for i in 0..50u64 {
        let deg = 2 + (i % 3) as usize;
        let n = 5 + (i as usize * 495) / 49;
        let t = RootedTree::from_tree_graph(random_tree(n, deg, &mut rng(500 + i)), 0).unwrap();
        let (d, st) = draw_tree_planar_with_stats(&t, &eps).unwrap();
        assert!(is_planar_drawing(&d), "seed {i}: not planar");
        let hi = measured(&d);
        assert!(hi <= eps.tree_bound(), "seed {i}: ratio {} above (gamma+2)/gamma", f(&hi));
        if hi > rat(3, 2) {
            above += 1;
        }
        worst = worst.max(f(&hi));
        assert!(edge_lengths_sq(&d).iter().all(|(_, l)| *l >= int(1)), "seed {i}: short edge");
        let bb = bounding_box(&d).unwrap();
        assert!(BigInt::one() << st.height <= BigInt::from(st.n_prime), "seed {i}: height above log2 n'");
        assert!(bb.height() <= int(st.height as i64), "seed {i}: drawing taller than tree");
        assert!(bb.width() <= Rational::from_integer(st.recurrence_width.clone()), "seed {i}: width above recurrence");
        keep(&d, &hi);
        let (d2, _) = draw_tree_planar_with_stats(&t, &half).unwrap();
        assert!(measured(&d2) <= rat(3, 2), "seed {i}: eps = 1/2 drawing above 3/2");
    }
    format!(
        "50 trees planar, edges >= 1, height and width bounds hold; ratio within 2 at eps = 1 \
         (max {worst:.4}, {above} above 1.5); all within 1.5 at eps = 1/2"
    )
}

/// Point on the unit circle at angle `theta`, exactly, via the rational
/// parametrization with `t = tan(theta / 2)` rounded to a double.
fn circle_point(theta: f64) -> Point {
    if (theta - std::f64::consts::PI).abs() < 1e-9 {
        return Point::from_ints(-1, 0);
    }
    let t = Rational::from_float((theta / 2.0).tan()).unwrap();
    let den = Rational::one() + &t * &t;
    Point::new((Rational::one() - &t * &t) / &den, (int(2) * &t) / den)
}

fn criterion_6() -> String {
    let n = 100;
    let mut pts = vec![Point::origin()];
    for k in 0..n {
        pts.push(circle_point(2.0 * std::f64::consts::PI * k as f64 / n as f64));
    }
    let edges: Vec<_> = (1..=n).map(|v| (0, v)).collect();
    let d = Drawing::new(Graph::from_edges(n + 1, &edges).unwrap(), pts).unwrap();
    let s = rat(14, 10);
    let check = annulus_bound_check(&d, &s).unwrap();
    assert_eq!(check.violations.len(), 1, "expected one overfull annulus");
    assert_eq!(check.violations[0].count, 100);
    assert!(check.violations[0].applicable);
    assert_eq!(check.verdict, Verdict::Consistent);
    // brute-force oracle: leaves only connect through the hub
    let mut oracle = 0.0f64;
    for i in 1..=n {
        for j in i + 1..=n {
            let dist = f(&d.point(i).dist_sq(d.point(j))).sqrt();
            oracle = oracle.max(2.0 / dist);
        }
    }
    let expect = 1.0 / (std::f64::consts::PI / 100.0).sin();
    assert!((oracle / expect - 1.0).abs() < 1e-9);
    let iv = spanning_ratio(&d, &rat(1, 1_000_000_000_000)).unwrap();
    let (lo, hi) = (iv.lo.to_f64(), iv.hi.to_f64());
    assert!((lo / expect - 1.0).abs() < 1e-6 && (hi / expect - 1.0).abs() < 1e-6, "enclosure [{lo}, {hi}]");
    let produced = PRODUCED.lock().unwrap();
    for (k, (dr, hi)) in produced.iter().enumerate() {
        let c = annulus_bound_check(dr, hi).unwrap();
        assert!(c.violations.is_empty(), "drawing {k} has an overfull annulus");
    }
    format!(
        "star: 100 > 94.08 flagged, ratio [{lo:.6}, {hi:.6}] vs {expect:.6}, Consistent; \
         {} produced drawings without violations",
        produced.len()
    )
}

/// Independent all-pairs enclosure: Floyd-Warshall on fixed-point lengths
/// with `bits` fractional bits, rounded down and up.
fn brute_force_ratio(d: &Drawing, bits: u32) -> (Rational, Rational) {
    let n = d.n();
    let scale = BigInt::one() << (2 * bits);
    let root = |q: &Rational, up: bool| -> BigInt {
        let x = q * Rational::from_integer(scale.clone());
        let fl = x.floor().to_integer();
        let r = fl.sqrt();
        if !up {
            return r;
        }
        if &r * &r == fl && x.is_integer() {
            r
        } else {
            r + 1
        }
    };
    let inf: Option<BigInt> = None;
    let mut lo = vec![vec![inf.clone(); n]; n];
    let mut hi = vec![vec![inf; n]; n];
    for v in 0..n {
        lo[v][v] = Some(BigInt::zero());
        hi[v][v] = Some(BigInt::zero());
    }
    for (u, v) in d.graph().edges() {
        let q = d.point(u).dist_sq(d.point(v));
        let (a, b) = (root(&q, false), root(&q, true));
        lo[u][v] = Some(a.clone());
        lo[v][u] = Some(a);
        hi[u][v] = Some(b.clone());
        hi[v][u] = Some(b);
    }
    for m in [&mut lo, &mut hi] {
        for k in 0..n {
            for i in 0..n {
                let Some(ik) = m[i][k].clone() else { continue };
                for j in 0..n {
                    if let Some(kj) = &m[k][j] {
                        let cand = &ik + kj;
                        if m[i][j].as_ref().is_none_or(|cur| cand < *cur) {
                            m[i][j] = Some(cand);
                        }
                    }
                }
            }
        }
    }
    let mut best_lo = Rational::zero();
    let mut best_hi = Rational::zero();
    for i in 0..n {
        for j in i + 1..n {
            let q = d.point(i).dist_sq(d.point(j));
            let (dl, dh) = (root(&q, false), root(&q, true));
            let pl = lo[i][j].clone().unwrap();
            let ph = hi[i][j].clone().unwrap();
            best_lo = best_lo.max(Rational::new(pl, dh));
            best_hi = best_hi.max(Rational::new(ph, dl));
        }
    }
    (best_lo, best_hi)
}

fn criterion_7() -> String {
    let mut widest = 0.0f64;
    for i in 0..100u64 {
        let n = 2 + (i as usize * 48) / 99;
        let d = random_drawing(n, 0.2, &mut rng(700 + i));
        let iv = spanning_ratio(&d, &tol()).unwrap();
        let rel = iv.relative_width().unwrap();
        assert!(rel <= tol(), "drawing {i}: enclosure too wide");
        widest = widest.max(f(&rel));
        let (blo, bhi) = brute_force_ratio(&d, 128);
        let oracle = Interval::new(Ext::Finite(blo), Ext::Finite(bhi));
        assert!(iv.intersects(&oracle), "drawing {i}: enclosures disjoint");
    }
    format!("100 drawings agree with Floyd-Warshall at 128 bits, widest relative enclosure {widest:.2e}")
}

fn permutation_oracle(g: &Graph) -> bool {
    fn rec(g: &Graph, last: Option<usize>, used: &mut Vec<bool>, left: usize) -> bool {
        if left == 0 {
            return true;
        }
        for v in 0..g.n() {
            if !used[v] && last.is_none_or(|u| g.has_edge(u, v)) {
                used[v] = true;
                if rec(g, Some(v), used, left - 1) {
                    return true;
                }
                used[v] = false;
            }
        }
        false
    }
    rec(g, None, &mut vec![false; g.n()], g.n())
}

fn criterion_8() -> String {
    let mut yes = 0;
    for i in 0..200u64 {
        let mut r = rng(800 + i);
        let n = r.gen_range(1..=8usize);
        let p = r.gen_range(0.1..0.7);
        let mut g = Graph::new(n);
        for u in 0..n {
            for v in u + 1..n {
                if r.gen_bool(p) {
                    g.add_edge(u, v);
                }
            }
        }
        let fast = hamiltonian_path_exists(&g).unwrap();
        assert_eq!(fast, permutation_oracle(&g), "graph {i} disagrees: {:?}", g.edges());
        if fast {
            yes += 1;
            if n >= 2 {
                assert!(is_connected(&g));
                let w = sr1_witness(&g).unwrap().unwrap();
                let iv = spanning_ratio(&w, &rat(1, 1_000_000_000_000)).unwrap();
                let one = Ext::Finite(Rational::one());
                let close = Ext::Finite(Rational::one() + rat(1, 1_000_000_000_000));
                assert!(iv.lo == one && iv.hi <= close, "graph {i}: witness ratio not 1");
            }
        }
    }
    format!("200 graphs, 0 disagreements, {yes} Hamiltonian witnesses at ratio 1")
}

fn criterion_9() -> String {
    let bin = env!("CARGO_BIN_EXE_spannerdraw");
    let dir = tempfile::tempdir().unwrap();
    let run = |args: &[&str]| {
        let out = Command::new(bin).args(args).current_dir(dir.path()).output().unwrap();
        assert!(out.status.success(), "{args:?} failed: {}", String::from_utf8_lossy(&out.stderr));
    };
    let read = |name: &str| std::fs::read(dir.path().join(name)).unwrap();
    let inputs = [("tree", "t.json"), ("planar", "p.json"), ("connected", "c.json")];
    for (family, file) in inputs {
        run(&["generate", family, "--n", "25", "--seed", "9", "-o", file]);
        run(&["generate", family, "--n", "25", "--seed", "9", "-o", "again.json"]);
        assert_eq!(read(file), read("again.json"), "generate {family} not reproducible");
    }
    let cases = [
        ("planar", "p.json"),
        ("proper", "c.json"),
        ("tree-proper", "t.json"),
        ("tree-planar", "t.json"),
        ("tough", "c.json"),
    ];
    for (construction, input) in cases {
        for eps in ["1", "1/3"] {
            run(&["draw", construction, input, "--epsilon", eps, "--seed", "9", "-o", "a.json"]);
            run(&["draw", construction, input, "--epsilon", eps, "--seed", "9", "-o", "b.json"]);
            assert_eq!(read("a.json"), read("b.json"), "draw {construction} not byte-identical");
        }
    }
    "5 draw subcommands x 2 eps and 3 generators byte-identical across reruns".into()
}

type Criterion = (u32, &'static str, fn() -> String);

fn main() {
    let criteria: [Criterion; 9] = [
        (1, "planar spanner drawings", criterion_1),
        (2, "base triangle ratio", criterion_2),
        (3, "proper spanner drawings", criterion_3),
        (4, "proper tree drawings", criterion_4),
        (5, "planar tree drawings", criterion_5),
        (6, "annulus lower-bound consistency", criterion_6),
        (7, "spanning ratio vs brute force", criterion_7),
        (8, "Hamiltonian path recognizer", criterion_8),
        (9, "determinism of draw output", criterion_9),
    ];
    std::panic::set_hook(Box::new(|_| {}));
    let mut failed = 0;
    for (id, name, run) in criteria {
        let start = Instant::now();
        let result = catch_unwind(AssertUnwindSafe(run));
        let secs = start.elapsed().as_secs_f64();
        match result {
            Ok(detail) => println!("criterion {id} PASS {name}: {detail} ({secs:.1} s)"),
            Err(e) => {
                failed += 1;
                let msg = e
                    .downcast_ref::<String>()
                    .cloned()
                    .or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string()))
                    .unwrap_or_default();
                println!("criterion {id} FAIL {name}: {msg} ({secs:.1} s)");
            }
        }
    }
    if failed > 0 {
        std::process::exit(1);
    }
}
