//! Brute-force reference implementations. Nothing here uses the library's
//! root tables or dynamic programs; only the quiver's Cartan form.


use qsr_core::{ParamSet, Quiver};

pub fn pair(q: &Quiver, a: &[i64], b: &[i64]) -> i64 {
    let n = a.len();
    let mut s = 0;
    for i in 0..n {
        for j in 0..n {
            s += a[i] * q.cartan(i, j) * b[j];
        }
    }
    s
}

pub fn p(q: &Quiver, a: &[i64]) -> i64 {
    1 - pair(q, a, a) / 2
}

fn connected(q: &Quiver, v: &[i64]) -> bool {
    let supp: Vec<usize> = (0..v.len()).filter(|&i| v[i] > 0).collect();
    let Some(&first) = supp.first() else { return false };
    let mut seen = vec![first];
    let mut frontier = vec![first];
    while let Some(i) = frontier.pop() {
        for &j in &supp {
            if !seen.contains(&j) && q.cartan(i, j) != 0 {
                seen.push(j);
                frontier.push(j);
            }
        }
    }
    seen.len() == supp.len()
}

/// Root test by repeated reflection at loopfree vertices.
pub fn is_root(q: &Quiver, v: &[i64]) -> bool {
    let mut v = v.to_vec();
    if v.iter().all(|&x| x == 0) || v.iter().any(|&x| x < 0) {
        return false;
    }
    loop {
        let n = v.len();
        let step = (0..n).find(|&i| {
            let unit: Vec<i64> = (0..n).map(|j| (j == i) as i64).collect();
            q.loop_count(i) == 0 && pair(q, &v, &unit) > 0
        });
        match step {
            None => return connected(q, &v),
            Some(i) => {
                if v.iter().enumerate().all(|(j, &x)| x == (j == i) as i64) {
                    return true;
                }
                let unit: Vec<i64> = (0..n).map(|j| (j == i) as i64).collect();
                v[i] -= pair(q, &v, &unit);
                if v[i] < 0 {
                    return false;
                }
            }
        }
    }
}

pub fn kills(params: &ParamSet, v: &[i64]) -> bool {
    params.annihilates(v)
}

/// Every vector `0 < v <= bound`, in reverse lexicographic order.
pub fn box_vectors(bound: &[i64]) -> Vec<Vec<i64>> {
    let mut out = vec![vec![]];
    for &b in bound {
        out = out.into_iter().flat_map(|v| (0..=b).map(move |x| [v.clone(), vec![x]].concat())).collect();
    }
    out.retain(|v| v.iter().any(|&x| x > 0));
    out.sort();
    out.reverse();
    out
}

pub fn restricted(q: &Quiver, params: &ParamSet, bound: &[i64]) -> Vec<Vec<i64>> {
    box_vectors(bound).into_iter().filter(|v| is_root(q, v) && kills(params, v)).collect()
}

fn le(a: &[i64], b: &[i64]) -> bool {
    a.iter().zip(b).all(|(x, y)| x <= y)
}

fn minus(a: &[i64], b: &[i64]) -> Vec<i64> {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

/// Calls `f` on every multiset of `parts` (given in a fixed order) summing
/// to `target`, with parts listed in that order.
pub fn for_each_decomposition(parts: &[Vec<i64>], target: &[i64], f: &mut dyn FnMut(&[Vec<i64>])) {
    fn go(parts: &[Vec<i64>], start: usize, left: Vec<i64>, cur: &mut Vec<Vec<i64>>, f: &mut dyn FnMut(&[Vec<i64>])) {
        if left.iter().all(|&x| x == 0) {
            f(cur);
            return;
        }
        for i in start..parts.len() {
            if le(&parts[i], &left) {
                cur.push(parts[i].clone());
                go(parts, i, minus(&left, &parts[i]), cur, f);
                cur.pop();
            }
        }
    }
    go(parts, 0, target.to_vec(), &mut Vec::new(), f);
}

pub fn max_p(q: &Quiver, roots: &[Vec<i64>], a: &[i64]) -> Option<i64> {
    let mut best = None;
    for_each_decomposition(roots, a, &mut |d| {
        let s: i64 = d.iter().map(|r| p(q, r)).sum();
        if best.is_none_or(|b| s > b) {
            best = Some(s);
        }
    });
    if a.iter().all(|&x| x == 0) {
        return Some(0);
    }
    best
}

/// Σ below `bound` straight from the definition: `p(r)` beats every
/// decomposition of `r` into at least two restricted roots.
pub fn sigma(q: &Quiver, params: &ParamSet, bound: &[i64]) -> Vec<Vec<i64>> {
    let roots = restricted(q, params, bound);
    roots
        .iter()
        .filter(|r| {
            let pr = p(q, r);
            let mut ok = true;
            let smaller: Vec<Vec<i64>> = roots.iter().filter(|s| le(s, r) && s != r).cloned().collect();
            for_each_decomposition(&smaller, r, &mut |d| {
                if d.len() >= 2 && d.iter().map(|x| p(q, x)).sum::<i64>() >= pr {
                    ok = false;
                }
            });
            ok
        })
        .cloned()
        .collect()
}

pub fn all_sigma_decompositions(sigma: &[Vec<i64>], a: &[i64]) -> Vec<Vec<Vec<i64>>> {
    let mut out = Vec::new();
    for_each_decomposition(sigma, a, &mut |d| out.push(d.to_vec()));
    out
}

/// Whether `fine` can be grouped into blocks summing to the parts of
/// `coarse`.
pub fn refines(fine: &[Vec<i64>], coarse: &[Vec<i64>]) -> bool {
    fn go(fine: &[Vec<i64>], slots: &mut Vec<Vec<i64>>) -> bool {
        let Some((head, rest)) = fine.split_first() else {
            return slots.iter().all(|s| s.iter().all(|&x| x == 0));
        };
        for i in 0..slots.len() {
            if le(head, &slots[i]) && !slots[..i].contains(&slots[i]) {
                slots[i] = minus(&slots[i], head);
                let ok = go(rest, slots);
                slots[i] = slots[i].iter().zip(head).map(|(x, y)| x + y).collect();
                if ok {
                    return true;
                }
            }
        }
        false
    }
    go(fine, &mut coarse.to_vec())
}

pub fn p_sum(q: &Quiver, d: &[Vec<i64>]) -> i64 {
    d.iter().map(|r| p(q, r)).sum()
}

/// Canonical parts as a sorted list of vectors, repeated by multiplicity.
pub fn expand(c: &qsr_core::decomp::CanonicalDecomposition) -> Vec<Vec<i64>> {
    let mut v: Vec<Vec<i64>> = c.expanded().iter().map(|r| r.vector.to_vec()).collect();
    v.sort();
    v
}

/// Checks (a) refinement, (b) unique maximality and the Σ/max_p agreement for
/// one instance. Returns a description of the first disagreement.
pub fn check_instance(q: &Quiver, params: &ParamSet, a: &[i64]) -> Result<(), String> {
    let alpha = qsr_core::DimVector::new(a.to_vec()).unwrap();
    let lib_canon = qsr_core::decomp::canonical_decomposition(q, params, &alpha).map_err(|e| e.to_string())?;
    let roots = restricted(q, params, a);
    let oracle_max = max_p(q, &roots, a);
    let lib_max = qsr_core::decomp::max_p(q, params, &alpha).map_err(|e| e.to_string())?;
    if oracle_max != lib_max {
        return Err(format!("max_p: oracle {oracle_max:?}, library {lib_max:?}"));
    }
    let sig = sigma(q, params, a);
    let mut lib_sigma: Vec<Vec<i64>> = qsr_core::decomp::sigma_enumerate(q, params, &alpha)
        .map_err(|e| e.to_string())?
        .into_iter()
        .map(|r| r.vector.to_vec())
        .collect();
    lib_sigma.sort();
    lib_sigma.reverse();
    if sig != lib_sigma {
        return Err(format!("sigma: oracle {sig:?}, library {lib_sigma:?}"));
    }
    let decomps = all_sigma_decompositions(&sig, a);
    match (lib_canon, oracle_max) {
        (None, None) => {
            if !decomps.is_empty() {
                return Err("library says empty but Σ-decompositions exist".into());
            }
        }
        (Some(c), Some(mp)) => {
            let canon = expand(&c);
            if p_sum(q, &canon) != mp {
                return Err(format!("canonical p-sum {} != max_p {mp}", p_sum(q, &canon)));
            }
            if let Some(r) = roots.iter().find(|r| r.as_slice() == a) {
                if mp < p(q, r) {
                    return Err("max_p below p(alpha)".into());
                }
            }
            for d in &decomps {
                if !refines(d, &canon) {
                    return Err(format!("{d:?} does not refine {canon:?}"));
                }
                let mut sorted = d.clone();
                sorted.sort();
                if sorted != canon && p_sum(q, d) >= mp {
                    return Err(format!("{d:?} ties or beats the canonical p-sum"));
                }
            }
            if a.iter().any(|&x| x > 0) && decomps.is_empty() {
                return Err("no Σ-decompositions found by brute force".into());
            }
        }
        (c, m) => return Err(format!("emptiness disagrees: canonical {:?}, oracle max_p {m:?}", c.is_some())),
    }
    Ok(())
}
