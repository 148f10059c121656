//! Interval modules over linearly oriented `A_n`, `1 -> 2 -> ... -> n`.
//! `[a, b]` has top `a` and socle `b`.

pub type Interval = (usize, usize);

pub fn intervals(n: usize) -> Vec<Interval> {
    (1..=n).flat_map(|a| (a..=n).map(move |b| (a, b))).collect()
}

pub fn label(n: usize, (a, b): Interval) -> String {
    let d: Vec<&str> = (1..=n).map(|v| if a <= v && v <= b { "1" } else { "0" }).collect();
    format!("M[{}]", d.join(","))
}

/// `Hom([a,b], [c,d]) != 0`.
pub fn hom_nonzero((a, b): Interval, (c, d): Interval) -> bool {
    c <= a && a <= d && d <= b
}

/// Kernel and cokernel of the nonzero map `[a,b] -> [c,d]`; its image is `[a,d]`.
pub fn kernel((_, b): Interval, (_, d): Interval) -> Option<Interval> {
    (d < b).then_some((d + 1, b))
}

pub fn cokernel((a, _): Interval, (c, _): Interval) -> Option<Interval> {
    (c < a).then_some((c, a - 1))
}

/// Middle terms of the nonsplit extension `0 -> [c,d] -> E -> [a,b] -> 0`.
pub fn extension_middle((a, b): Interval, (c, d): Interval) -> Option<Vec<Interval>> {
    if a < c && c <= b + 1 && b < d {
        let mut out = vec![(a, d)];
        if c <= b {
            out.push((c, b));
        }
        Some(out)
    } else {
        None
    }
}

/// Subsets of the indecomposables closed under kernels and cokernels of maps
/// between members and under middle terms of extensions between members.
pub fn wide_families(n: usize) -> Vec<Vec<Interval>> {
    let all = intervals(n);
    let mut out = Vec::new();
    for mask in 0u64..(1 << all.len()) {
        let fam: Vec<Interval> = (0..all.len()).filter(|&i| mask >> i & 1 == 1).map(|i| all[i]).collect();
        let has = |x: &Interval| fam.contains(x);
        let mut ok = true;
        for &x in &fam {
            for &y in &fam {
                if hom_nonzero(x, y) {
                    ok &= kernel(x, y).map_or(true, |k| has(&k));
                    ok &= cokernel(x, y).map_or(true, |c| has(&c));
                }
                if let Some(mid) = extension_middle(x, y) {
                    ok &= mid.iter().all(has);
                }
            }
        }
        if ok {
            out.push(fam);
        }
    }
    out
}
