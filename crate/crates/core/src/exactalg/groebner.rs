//! Buchberger's algorithm for reduced lex Gröbner bases over ℚ.

use std::collections::{BTreeMap, BTreeSet};

use num_rational::BigRational;
use num_traits::{One, Zero};

use super::pairvar::PairVar;
use super::poly::{Monomial, MultiPoly};

type Exp = Vec<u32>;
/// Dense polynomial keyed by exponent vector; the lex-largest term is last.
type Dense = BTreeMap<Exp, BigRational>;

/// A reduced lex Gröbner basis together with its variable order.
#[derive(Clone, Debug)]
pub struct GroebnerBasis {
    order: Vec<PairVar>,
    dense: Vec<Dense>,
    polys: Vec<MultiPoly>,
}

fn divides(a: &Exp, b: &Exp) -> bool {
    a.iter().zip(b).all(|(x, y)| x <= y)
}

fn lcm(a: &Exp, b: &Exp) -> Exp {
    a.iter().zip(b).map(|(x, y)| *x.max(y)).collect()
}

fn sub_exp(a: &Exp, b: &Exp) -> Exp {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

fn add_exp(a: &Exp, b: &Exp) -> Exp {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

fn lead(p: &Dense) -> &Exp {
    p.keys().next_back().expect("nonzero polynomial")
}

fn make_monic(p: Dense) -> Dense {
    let c = p.values().next_back().expect("nonzero").clone();
    if c.is_one() {
        return p;
    }
    p.into_iter().map(|(m, k)| (m, k / &c)).collect()
}

fn add_scaled(p: &mut Dense, g: &Dense, shift: &Exp, c: &BigRational) {
    for (m, k) in g {
        let e = add_exp(m, shift);
        let v = k * c;
        match p.get_mut(&e) {
            Some(x) => {
                *x += v;
                if x.is_zero() {
                    p.remove(&e);
                }
            }
            None => {
                p.insert(e, v);
            }
        }
    }
}

/// Full reduction of `p` by monic `basis`.
fn normal_form(mut p: Dense, basis: &[Dense]) -> Dense {
    let mut r = Dense::new();
    while let Some((m, c)) = p.pop_last() {
        match basis.iter().find(|g| divides(lead(g), &m)) {
            Some(g) => {
                let shift = sub_exp(&m, lead(g));
                let mut tail = g.clone();
                tail.pop_last();
                add_scaled(&mut p, &tail, &shift, &-c);
            }
            None => {
                r.insert(m, c);
            }
        }
    }
    r
}

fn s_poly(f: &Dense, g: &Dense) -> Dense {
    let l = lcm(lead(f), lead(g));
    let mut out = Dense::new();
    add_scaled(&mut out, f, &sub_exp(&l, lead(f)), &BigRational::one());
    add_scaled(&mut out, g, &sub_exp(&l, lead(g)), &-BigRational::one());
    out
}

impl GroebnerBasis {
    fn to_dense(order: &[PairVar], p: &MultiPoly) -> Dense {
        let mut out = Dense::new();
        for (m, c) in p.terms() {
            let mut e = vec![0u32; order.len()];
            for &(v, k) in m.powers() {
                let idx = order.iter().position(|&w| w == v).expect("variable in order");
                e[idx] = k;
            }
            out.insert(e, c.clone());
        }
        out
    }

    fn from_dense(order: &[PairVar], p: &Dense) -> MultiPoly {
        MultiPoly::from_terms(p.iter().map(|(e, c)| {
            (Monomial::from_powers(order.iter().zip(e).map(|(&v, &k)| (v, k))), c.clone())
        }))
    }

    pub fn order(&self) -> &[PairVar] {
        &self.order
    }

    /// Basis polynomials, monic, sorted by ascending leading monomial.
    pub fn polys(&self) -> &[MultiPoly] {
        &self.polys
    }

    /// True when the basis is `{1}`, i.e. the variety is empty.
    pub fn is_unit(&self) -> bool {
        self.dense.len() == 1 && lead(&self.dense[0]).iter().all(|&e| e == 0)
    }

    /// Normal form of `p` modulo the ideal.
    pub fn reduce(&self, p: &MultiPoly) -> MultiPoly {
        let mut order = self.order.clone();
        for v in p.variables() {
            if !order.contains(&v) {
                order.push(v);
            }
        }
        if order.len() == self.order.len() {
            return Self::from_dense(&order, &normal_form(Self::to_dense(&order, p), &self.dense));
        }
        let basis: Vec<Dense> = self.polys.iter().map(|g| Self::to_dense(&order, g)).collect();
        Self::from_dense(&order, &normal_form(Self::to_dense(&order, p), &basis))
    }

    pub fn contains(&self, p: &MultiPoly) -> bool {
        self.reduce(p).is_zero()
    }

    /// Leading exponent vector of each basis element, in the basis order.
    pub fn leading_exponents(&self) -> Vec<Vec<u32>> {
        self.dense.iter().map(|g| lead(g).clone()).collect()
    }
}

/// Reduced Gröbner basis in lex order with `var_order[0]` largest.
///
/// Variables that occur in `system` but not in `var_order` are appended in
/// the default order.
pub fn groebner_lex(system: &[MultiPoly], var_order: &[PairVar]) -> GroebnerBasis {
    let mut order: Vec<PairVar> = var_order.to_vec();
    let extra: BTreeSet<PairVar> = system.iter().flat_map(MultiPoly::variables).filter(|v| !order.contains(v)).collect();
    order.extend(extra);

    let mut basis: Vec<Dense> = Vec::new();
    for p in system {
        let d = normal_form(GroebnerBasis::to_dense(&order, p), &basis);
        if !d.is_empty() {
            basis.push(make_monic(d));
        }
    }

    let mut pairs: BTreeSet<(u32, usize, usize)> = BTreeSet::new();
    let pair_key = |b: &[Dense], i: usize, j: usize| -> (u32, usize, usize) {
        let l = lcm(lead(&b[i]), lead(&b[j]));
        (l.iter().sum(), i, j)
    };
    for j in 0..basis.len() {
        for i in 0..j {
            pairs.insert(pair_key(&basis, i, j));
        }
    }
    let mut done: BTreeSet<(usize, usize)> = BTreeSet::new();

    while let Some(key) = pairs.pop_first() {
        let (_, i, j) = key;
        done.insert((i, j));
        let (li, lj) = (lead(&basis[i]), lead(&basis[j]));
        if li.iter().zip(lj).all(|(a, b)| *a == 0 || *b == 0) {
            continue;
        }
        let l = lcm(li, lj);
        let pending = |a: usize, b: usize| {
            let (a, b) = if a < b { (a, b) } else { (b, a) };
            !done.contains(&(a, b))
        };
        let chain = (0..basis.len())
            .any(|k| k != i && k != j && divides(lead(&basis[k]), &l) && !pending(i, k) && !pending(j, k));
        if chain {
            continue;
        }
        let s = normal_form(s_poly(&basis[i], &basis[j]), &basis);
        if s.is_empty() {
            continue;
        }
        let s = make_monic(s);
        let unit = lead(&s).iter().all(|&e| e == 0);
        basis.push(s);
        if unit {
            basis = vec![basis.pop().expect("just pushed")];
            break;
        }
        let n = basis.len() - 1;
        for k in 0..n {
            pairs.insert(pair_key(&basis, k, n));
        }
    }

    // minimize then interreduce
    let mut minimal: Vec<Dense> = Vec::new();
    for (idx, g) in basis.iter().enumerate() {
        let redundant = basis.iter().enumerate().any(|(k, h)| {
            k != idx && divides(lead(h), lead(g)) && (lead(h) != lead(g) || k < idx)
        });
        if !redundant {
            minimal.push(g.clone());
        }
    }
    let mut reduced = Vec::with_capacity(minimal.len());
    for idx in 0..minimal.len() {
        let others: Vec<Dense> = minimal.iter().enumerate().filter(|&(k, _)| k != idx).map(|(_, g)| g.clone()).collect();
        let mut g = minimal[idx].clone();
        let (lm, lc) = g.pop_last().expect("nonzero");
        let mut tail = normal_form(g, &others);
        tail.insert(lm, lc);
        reduced.push(make_monic(tail));
    }
    reduced.sort_by(|a, b| lead(a).cmp(lead(b)));
    let polys = reduced.iter().map(|g| GroebnerBasis::from_dense(&order, g)).collect();
    GroebnerBasis { order, dense: reduced, polys }
}

/// Normal form of `p` modulo the ideal generated by `basis`.
pub fn reduce(p: &MultiPoly, basis: &GroebnerBasis) -> MultiPoly {
    basis.reduce(p)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(i: usize, j: usize) -> PairVar {
        PairVar::new(i, j)
    }

    fn p(s: &str) -> MultiPoly {
        s.parse().unwrap()
    }

    #[test]
    fn single_linear() {
        let g = groebner_lex(&[p("x[1,2] - 2")], &[v(1, 2)]);
        assert_eq!(g.polys(), &[p("x[1,2] - 2")]);
    }

    #[test]
    fn gcd_case() {
        let g = groebner_lex(&[p("x[1,2]^2 - 1"), p("x[1,2] - 1")], &[v(1, 2)]);
        assert_eq!(g.polys(), &[p("x[1,2] - 1")]);
    }

    #[test]
    fn inconsistent_gives_unit() {
        let g = groebner_lex(&[p("x[1,2] - 1"), p("x[1,2] - 2")], &[v(1, 2)]);
        assert!(g.is_unit());
    }

    #[test]
    fn triangular_shape() {
        // x = y^2, y^2 = 2 gives {y^2 - 2, x - 2} in lex x > y
        let g = groebner_lex(&[p("x[1,2] - x[1,3]^2"), p("x[1,3]^2 - 2")], &[v(1, 2), v(1, 3)]);
        assert_eq!(g.polys(), &[p("x[1,3]^2 - 2"), p("x[1,2] - 2")]);
        assert!(g.contains(&p("x[1,2]*x[1,3]^2 - 4")));
        assert!(!g.contains(&p("x[1,3] - 2")));
    }

    #[test]
    fn respects_variable_order() {
        let sys = [p("x[1,2] - x[1,3]^2"), p("x[1,3]^2 - 2")];
        let g = groebner_lex(&sys, &[v(1, 3), v(1, 2)]);
        // with x[1,3] largest the eliminant lives in x[1,2]
        assert!(g.polys().iter().any(|q| q.variables() == [v(1, 2)].into_iter().collect()));
    }
}
