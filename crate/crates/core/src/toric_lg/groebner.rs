//! Buchberger's algorithm over `ℚ` in degree-reverse-lexicographic order, with sugar
//! pair selection and the Gebauer–Möller criteria.

use std::cmp::Ordering;
use std::fmt;

use num_traits::{One, Zero};

use crate::novikov::Q;

/// Exponent vector ordered by grevlex.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Mono(pub Vec<u32>);

impl Mono {
    pub fn one(n: usize) -> Self {
        Mono(vec![0; n])
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn divides(&self, o: &Mono) -> bool {
        self.0.iter().zip(&o.0).all(|(a, b)| a <= b)
    }

    pub fn lcm(&self, o: &Mono) -> Mono {
        Mono(self.0.iter().zip(&o.0).map(|(a, b)| *a.max(b)).collect())
    }

    pub fn gcd(&self, o: &Mono) -> Mono {
        Mono(self.0.iter().zip(&o.0).map(|(a, b)| *a.min(b)).collect())
    }

    pub fn coprime(&self, o: &Mono) -> bool {
        self.0.iter().zip(&o.0).all(|(a, b)| *a == 0 || *b == 0)
    }

    pub fn mul(&self, o: &Mono) -> Mono {
        Mono(self.0.iter().zip(&o.0).map(|(a, b)| a + b).collect())
    }

    /// `self / o`, assuming `o | self`.
    pub fn div(&self, o: &Mono) -> Mono {
        Mono(self.0.iter().zip(&o.0).map(|(a, b)| a - b).collect())
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&a| a == 0)
    }

    pub fn display(&self, names: &[String]) -> String {
        let parts: Vec<String> = self
            .0
            .iter()
            .zip(names)
            .filter(|(a, _)| **a > 0)
            .map(|(&a, x)| if a == 1 { x.clone() } else { format!("{x}^{a}") })
            .collect();
        if parts.is_empty() {
            "1".into()
        } else {
            parts.join("*")
        }
    }
}

impl Ord for Mono {
    fn cmp(&self, o: &Self) -> Ordering {
        self.degree().cmp(&o.degree()).then_with(|| {
            for (a, b) in self.0.iter().zip(&o.0).rev() {
                if a != b {
                    // smaller exponent in the last differing variable is larger
                    return b.cmp(a);
                }
            }
            Ordering::Equal
        })
    }
}

impl PartialOrd for Mono {
    fn partial_cmp(&self, o: &Self) -> Option<Ordering> {
        Some(self.cmp(o))
    }
}

/// Sparse polynomial, terms sorted by decreasing monomial.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct MPoly {
    nvars: usize,
    terms: Vec<(Mono, Q)>,
}

impl MPoly {
    pub fn zero(nvars: usize) -> Self {
        MPoly { nvars, terms: Vec::new() }
    }

    pub fn new(nvars: usize, terms: Vec<(Mono, Q)>) -> Self {
        let mut terms: Vec<(Mono, Q)> = terms.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        terms.sort_by(|a, b| b.0.cmp(&a.0));
        let mut merged: Vec<(Mono, Q)> = Vec::with_capacity(terms.len());
        for (m, c) in terms {
            match merged.last_mut() {
                Some((lm, lc)) if *lm == m => *lc += c,
                _ => merged.push((m, c)),
            }
        }
        merged.retain(|(_, c)| !c.is_zero());
        MPoly { nvars, terms: merged }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn terms(&self) -> &[(Mono, Q)] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn lm(&self) -> &Mono {
        &self.terms[0].0
    }

    pub fn lc(&self) -> &Q {
        &self.terms[0].1
    }

    pub fn total_degree(&self) -> u32 {
        self.terms.iter().map(|(m, _)| m.degree()).max().unwrap_or(0)
    }

    pub fn monic(mut self) -> Self {
        if let Some(inv) = self.terms.first().map(|(_, c)| Q::one() / c) {
            for (_, c) in self.terms.iter_mut() {
                *c *= &inv;
            }
        }
        self
    }

    /// Divides out the largest monomial dividing every term.
    pub fn strip_monomial_content(mut self) -> Self {
        let Some(first) = self.terms.first().map(|(m, _)| m.clone()) else { return self };
        let g = self.terms.iter().fold(first, |g, (m, _)| g.gcd(m));
        if !g.is_one() {
            for (m, _) in self.terms.iter_mut() {
                *m = m.div(&g);
            }
        }
        self
    }

    /// `self − c·x^m·g`, merging sorted term lists.
    fn sub_scaled(&self, c: &Q, m: &Mono, g: &MPoly) -> MPoly {
        let mut out = Vec::with_capacity(self.terms.len() + g.terms.len());
        let mut a = self.terms.iter().peekable();
        let mut b = g.terms.iter().map(|(gm, gc)| (gm.mul(m), gc * c)).peekable();
        loop {
            match (a.peek(), b.peek()) {
                (Some((am, _)), Some((bm, _))) => match am.cmp(bm) {
                    Ordering::Greater => out.push(a.next().cloned().expect("peeked")),
                    Ordering::Less => {
                        let (bm, bc) = b.next().expect("peeked");
                        out.push((bm, -bc));
                    }
                    Ordering::Equal => {
                        let (am, ac) = a.next().cloned().expect("peeked");
                        let (_, bc) = b.next().expect("peeked");
                        let v = ac - bc;
                        if !v.is_zero() {
                            out.push((am, v));
                        }
                    }
                },
                (Some(_), None) => out.push(a.next().cloned().expect("peeked")),
                (None, Some(_)) => {
                    let (bm, bc) = b.next().expect("peeked");
                    out.push((bm, -bc));
                }
                (None, None) => break,
            }
        }
        MPoly { nvars: self.nvars, terms: out }
    }

    /// Full reduction modulo `basis` (every term, not just the leading one).
    pub fn normal_form(&self, basis: &[MPoly]) -> MPoly {
        let mut p = self.clone();
        let mut rem: Vec<(Mono, Q)> = Vec::new();
        while let Some((m, c)) = p.terms.first().cloned() {
            match basis.iter().find(|g| g.lm().divides(&m)) {
                Some(g) => {
                    let f = &c / g.lc();
                    p = p.sub_scaled(&f, &m.div(g.lm()), g);
                }
                None => {
                    rem.push((m, c));
                    p.terms.remove(0);
                }
            }
        }
        MPoly { nvars: self.nvars, terms: rem }
    }

    fn s_poly(&self, o: &MPoly) -> MPoly {
        let l = self.lm().lcm(o.lm());
        let a = MPoly::zero(self.nvars).sub_scaled(&(Q::one() / self.lc()), &l.div(self.lm()), self);
        a.sub_scaled(&(-Q::one() / o.lc()), &l.div(o.lm()), o)
    }

    pub fn display(&self, names: &[String]) -> String {
        if self.is_zero() {
            return "0".into();
        }
        self.terms.iter().map(|(m, c)| format!("({c})*{}", m.display(names))).collect::<Vec<_>>().join(" + ")
    }
}

impl fmt::Display for MPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names: Vec<String> = (1..=self.nvars).map(|i| format!("x{i}")).collect();
        write!(f, "{}", self.display(&names))
    }
}

#[derive(Clone, Debug)]
struct Pair {
    i: usize,
    j: usize,
    lcm: Mono,
    sugar: u32,
}

/// Options for [`groebner_basis`].
#[derive(Clone, Copy, Debug, Default)]
pub struct GroebnerOptions {
    /// Divide every new element by its monomial content. Sound only when every variable is
    /// a unit modulo the ideal, as for Laurent systems with an inverse relation.
    pub units_are_invertible: bool,
}

/// Reduced Gröbner basis, monic, sorted by decreasing leading monomial.
pub fn groebner_basis(gens: &[MPoly], opts: GroebnerOptions) -> Vec<MPoly> {
    let prep = |p: MPoly| if opts.units_are_invertible { p.strip_monomial_content().monic() } else { p.monic() };
    let mut polys: Vec<MPoly> = Vec::new();
    let mut sugars: Vec<u32> = Vec::new();
    let mut active: Vec<usize> = Vec::new();
    let mut pairs: Vec<Pair> = Vec::new();
    let mut queue: Vec<MPoly> = gens.iter().filter(|g| !g.is_zero()).cloned().map(prep).collect();
    queue.sort_by(|a, b| a.lm().cmp(b.lm()));
    let add = |h: MPoly, sugar: u32, polys: &mut Vec<MPoly>, sugars: &mut Vec<u32>, active: &mut Vec<usize>, pairs: &mut Vec<Pair>| {
        polys.push(h);
        sugars.push(sugar);
        update(polys.len() - 1, polys, sugars, active, pairs);
    };
    for g in queue {
        let g = g.normal_form(&active.iter().map(|&i| polys[i].clone()).collect::<Vec<_>>());
        if g.is_zero() {
            continue;
        }
        let s = g.total_degree();
        add(prep(g), s, &mut polys, &mut sugars, &mut active, &mut pairs);
    }
    while !pairs.is_empty() {
        let best = (0..pairs.len())
            .min_by(|&a, &b| {
                let (p, q) = (&pairs[a], &pairs[b]);
                p.sugar.cmp(&q.sugar).then_with(|| p.lcm.cmp(&q.lcm)).then_with(|| (p.i, p.j).cmp(&(q.i, q.j)))
            })
            .expect("nonempty");
        let pair = pairs.swap_remove(best);
        let basis: Vec<MPoly> = active.iter().map(|&i| polys[i].clone()).collect();
        let h = polys[pair.i].s_poly(&polys[pair.j]).normal_form(&basis);
        if h.is_zero() {
            continue;
        }
        let h = prep(h);
        if h.lm().is_one() {
            return vec![MPoly::new(h.nvars, vec![(Mono::one(h.nvars), Q::one())])];
        }
        add(h, pair.sugar, &mut polys, &mut sugars, &mut active, &mut pairs);
    }
    reduce(active.iter().map(|&i| polys[i].clone()).collect())
}

/// Gebauer–Möller update after appending `polys[h]`.
fn update(h: usize, polys: &[MPoly], sugars: &[u32], active: &mut Vec<usize>, pairs: &mut Vec<Pair>) {
    let lh = polys[h].lm().clone();
    let make = |g: usize| -> Pair {
        let lg = polys[g].lm();
        let lcm = lg.lcm(&lh);
        let sugar = (sugars[g] + lcm.degree() - lg.degree()).max(sugars[h] + lcm.degree() - lh.degree());
        Pair { i: g, j: h, lcm, sugar }
    };
    let c: Vec<Pair> = active.iter().map(|&g| make(g)).collect();
    // keep (g, h) if coprime or no other new pair has an lcm dividing its lcm
    let mut d: Vec<Pair> = Vec::new();
    for (idx, p) in c.iter().enumerate() {
        let coprime = polys[p.i].lm().coprime(&lh);
        let dominated = c.iter().enumerate().any(|(jdx, o)| jdx > idx && o.lcm.divides(&p.lcm))
            || d.iter().any(|o| o.lcm.divides(&p.lcm));
        if coprime || !dominated {
            d.push(p.clone());
        }
    }
    let e: Vec<Pair> = d.into_iter().filter(|p| !polys[p.i].lm().coprime(&lh)).collect();
    pairs.retain(|p| {
        !lh.divides(&p.lcm) || polys[p.i].lm().lcm(&lh) == p.lcm || polys[p.j].lm().lcm(&lh) == p.lcm
    });
    pairs.extend(e);
    active.retain(|&g| !lh.divides(polys[g].lm()));
    active.push(h);
}

/// Interreduces a Gröbner basis into the reduced one.
fn reduce(mut basis: Vec<MPoly>) -> Vec<MPoly> {
    basis.sort_by(|a, b| a.lm().cmp(b.lm()));
    let mut minimal: Vec<MPoly> = Vec::new();
    for g in basis {
        if !minimal.iter().any(|m| m.lm().divides(g.lm())) {
            minimal.retain(|m| !g.lm().divides(m.lm()));
            minimal.push(g);
        }
    }
    let mut out = Vec::with_capacity(minimal.len());
    for i in 0..minimal.len() {
        let others: Vec<MPoly> = minimal.iter().enumerate().filter(|(j, _)| *j != i).map(|(_, g)| g.clone()).collect();
        let lead = MPoly { nvars: minimal[i].nvars, terms: vec![minimal[i].terms[0].clone()] };
        let tail = MPoly { nvars: minimal[i].nvars, terms: minimal[i].terms[1..].to_vec() }.normal_form(&others);
        let mut terms = lead.terms;
        terms.extend(tail.terms);
        out.push(MPoly { nvars: minimal[i].nvars, terms }.monic());
    }
    out.sort_by(|a, b| b.lm().cmp(a.lm()));
    out
}

/// Standard monomials of a zero-dimensional ideal given by its Gröbner basis, or `None`
/// when the quotient is infinite-dimensional.
pub fn standard_monomials(basis: &[MPoly], nvars: usize) -> Option<Vec<Mono>> {
    if basis.iter().any(|g| g.lm().is_one()) {
        return Some(Vec::new());
    }
    let mut bounds = vec![u32::MAX; nvars];
    for g in basis {
        let m = g.lm();
        let support: Vec<usize> = (0..nvars).filter(|&i| m.0[i] > 0).collect();
        if let [i] = support[..] {
            bounds[i] = bounds[i].min(m.0[i]);
        }
    }
    if bounds.contains(&u32::MAX) {
        return None;
    }
    let mut out = Vec::new();
    let mut cur = vec![0u32; nvars];
    collect_standard(basis, &bounds, 0, &mut cur, &mut out);
    out.sort();
    Some(out)
}

fn collect_standard(basis: &[MPoly], bounds: &[u32], var: usize, cur: &mut Vec<u32>, out: &mut Vec<Mono>) {
    if var == bounds.len() {
        out.push(Mono(cur.clone()));
        return;
    }
    for e in 0..bounds[var] {
        cur[var] = e;
        // prune: a partial monomial already divisible by a leading term stays divisible
        let m = Mono(cur.clone());
        if basis.iter().any(|g| g.lm().divides(&m)) {
            break;
        }
        collect_standard(basis, bounds, var + 1, cur, out);
    }
    cur[var] = 0;
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::novikov::q;

    fn poly(n: usize, terms: &[(i64, &[u32])]) -> MPoly {
        MPoly::new(n, terms.iter().map(|(c, e)| (Mono(e.to_vec()), q(*c))).collect())
    }

    #[test]
    fn grevlex_order() {
        // x^2 > xy > y^2 > xz > yz > z^2 in grevlex with x > y > z
        let ms = [[2, 0, 0], [1, 1, 0], [0, 2, 0], [1, 0, 1], [0, 1, 1], [0, 0, 2]];
        for w in ms.windows(2) {
            assert!(Mono(w[0].to_vec()) > Mono(w[1].to_vec()));
        }
    }

    #[test]
    fn twisted_cubic_quotient_is_infinite() {
        // y - x^2, z - x^3: a curve, not zero-dimensional
        let g = groebner_basis(&[poly(3, &[(1, &[0, 1, 0]), (-1, &[2, 0, 0])]), poly(3, &[(1, &[0, 0, 1]), (-1, &[3, 0, 0])])], GroebnerOptions::default());
        assert!(standard_monomials(&g, 3).is_none());
        for p in &g {
            assert!(p.normal_form(&g).is_zero());
        }
    }

    #[test]
    fn bezout_count() {
        // x^2 + y^2 - 5, xy - 2: four intersection points
        let g = groebner_basis(&[poly(2, &[(1, &[2, 0]), (1, &[0, 2]), (-5, &[0, 0])]), poly(2, &[(1, &[1, 1]), (-2, &[0, 0])])], GroebnerOptions::default());
        assert_eq!(standard_monomials(&g, 2).unwrap().len(), 4);
    }

    #[test]
    fn unit_ideal() {
        let g = groebner_basis(&[poly(2, &[(1, &[1, 0])]), poly(2, &[(1, &[1, 0]), (-1, &[0, 0])])], GroebnerOptions::default());
        assert_eq!(standard_monomials(&g, 2).unwrap().len(), 0);
    }
}
