use super::states::ord;
use super::FiniteMv;
use crate::config::Caps;
use crate::error::{Error, Result};

/// First quadruple `a₁ + a₂ = b₁ + b₂` without a refinement
/// `c₁₁ c₁₂ c₂₁ c₂₂` having `c₁₂ ∧ c₂₁ = 0`.
pub fn rdp2_failure(a: &FiniteMv, caps: &Caps) -> Result<Option<String>> {
    let m = a.size();
    if m > caps.rdp_size {
        return Err(Error::CapExceeded(format!("RDP₂ search over {m} elements exceeds the cap {}", caps.rdp_size)));
    }
    let diff: Vec<Vec<Option<usize>>> = a.elements().map(|x| a.elements().map(|y| a.difference(x, y)).collect()).collect();
    let sum = |x: usize, y: usize| a.partial_sum(x, y);
    for a1 in a.elements() {
        for a2 in a.elements() {
            let Some(s) = sum(a1, a2) else { continue };
            for b1 in a.elements() {
                let Some(b2) = diff[s][b1] else { continue };
                let found = a.elements().any(|c11| {
                    let (Some(c12), Some(c21)) = (diff[a1][c11], diff[b1][c11]) else { return false };
                    let Some(c22) = diff[a2][c21] else { return false };
                    sum(c12, c22) == Some(b2) && a.meet(c12, c21) == a.zero()
                });
                if !found {
                    let l = |x: usize| a.label(x);
                    return Ok(Some(format!("{} + {} = {} + {} has no refinement", l(a1), l(a2), l(b1), l(b2))));
                }
            }
        }
    }
    Ok(None)
}

pub fn check_rdp2(a: &FiniteMv, caps: &Caps) -> Result<bool> {
    Ok(rdp2_failure(a, caps)?.is_none())
}

/// A bijection `f` with `f(x ⊕ y) = f(x) ⊕ f(y)`, `f(¬x) = ¬f(x)`,
/// `f(0) = 0`, found by backtracking.  Candidates are restricted to
/// elements with the same order and the same number of elements below.
pub fn brute_isomorphic(a: &FiniteMv, b: &FiniteMv) -> Option<Vec<usize>> {
    if a.size() != b.size() {
        return None;
    }
    let sig = |alg: &FiniteMv, x: usize| (ord(alg, x), alg.elements().filter(|&y| alg.le(y, x)).count());
    let cands: Vec<Vec<usize>> =
        a.elements().map(|x| b.elements().filter(|&y| sig(a, x) == sig(b, y)).collect()).collect();

    fn ok(a: &FiniteMv, b: &FiniteMv, f: &[Option<usize>], x: usize) -> bool {
        let fx = f[x].expect("assigned");
        if f[a.neg(x)].is_some_and(|n| n != b.neg(fx)) {
            return false;
        }
        a.elements().all(|y| match (f[y], f[a.oplus(x, y)]) {
            (Some(fy), Some(fz)) => b.oplus(fx, fy) == fz,
            _ => true,
        }) && a.elements().all(|y| match (f[y], f[a.oplus(y, x)]) {
            (Some(fy), Some(fz)) => b.oplus(fy, fx) == fz,
            _ => true,
        })
    }

    fn go(a: &FiniteMv, b: &FiniteMv, cands: &[Vec<usize>], f: &mut Vec<Option<usize>>, used: &mut Vec<bool>, x: usize) -> bool {
        if x == a.size() {
            return true;
        }
        for &y in &cands[x] {
            if used[y] {
                continue;
            }
            f[x] = Some(y);
            used[y] = true;
            if ok(a, b, f, x) && go(a, b, cands, f, used, x + 1) {
                return true;
            }
            f[x] = None;
            used[y] = false;
        }
        false
    }

    let mut f = vec![None; a.size()];
    let mut used = vec![false; b.size()];
    if !go(a, b, &cands, &mut f, &mut used, 0) {
        return None;
    }
    let f: Vec<usize> = f.into_iter().map(|y| y.expect("complete")).collect();
    (f[a.zero()] == b.zero() && f[a.one()] == b.one()).then_some(f)
}

#[cfg(test)]
mod tests {
    use super::super::{make_chain, make_product};
    use super::*;

    #[test]
    fn isomorphism_examples() {
        let c4 = make_chain(4).unwrap();
        assert_eq!(brute_isomorphic(&c4, &c4), Some(vec![0, 1, 2, 3, 4]));
        let c2 = make_chain(2).unwrap();
        let sq = make_product(&c2, &c2).unwrap();
        assert_eq!(brute_isomorphic(&c4, &sq), None);
        let (c1, c3) = (make_chain(1).unwrap(), make_chain(3).unwrap());
        let ab = make_product(&c1, &c3).unwrap();
        let ba = make_product(&c3, &c1).unwrap();
        let f = brute_isomorphic(&ab, &ba).unwrap();
        assert_eq!(ba.label(f[ab.index_of("(1,2)").unwrap()]), "(2,1)");
        assert_eq!(brute_isomorphic(&make_chain(7).unwrap(), &make_product(&c1, &c3).unwrap()), None);
    }

    #[test]
    fn rdp2_on_small_algebras() {
        let caps = Caps::default();
        for n in 1..=6 {
            assert!(check_rdp2(&make_chain(n).unwrap(), &caps).unwrap());
        }
        let c2 = make_chain(2).unwrap();
        assert!(check_rdp2(&make_product(&c2, &c2).unwrap(), &caps).unwrap());
    }
}
