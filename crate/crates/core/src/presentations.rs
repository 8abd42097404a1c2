//! Finitely presented algebras over field scalars via bounded-degree
//! noncommutative rewriting (overlap completion in the deglex order).
//!
//! The degree cap truncates the quotient: the completed rewriting system is
//! confluent on words below the cap, and the monomial basis consists of the
//! irreducible words of degree < cap. Products reduce first and drop the
//! irreducible part at or above the cap; the induced multiplication is
//! validated for associativity when the structure-constant algebra is
//! built.

use crate::algebra::instances::word_label;
use crate::algebra::{Algebra, Element};
use crate::error::{Error, Result};
use crate::scalars::{Scalar, ScalarMatrix, ScalarRing};
use std::collections::{BTreeMap, HashMap};
use std::fmt;

/// A word in the free monoid on the generators; empty = 1. Ordered by
/// degree first, then lexicographically (deglex).
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Word(pub Vec<u16>);

impl Word {
    pub fn one() -> Word {
        Word(Vec::new())
    }

    pub fn gen(i: usize) -> Word {
        Word(vec![i as u16])
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut v = self.0.clone();
        v.extend_from_slice(&other.0);
        Word(v)
    }

    /// Leftmost position where `pat` occurs as a factor, if any.
    pub fn find(&self, pat: &Word) -> Option<usize> {
        if pat.len() > self.len() {
            return None;
        }
        (0..=self.len() - pat.len()).find(|&i| self.0[i..i + pat.len()] == pat.0[..])
    }
}

impl PartialOrd for Word {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Word {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.len().cmp(&other.len()).then_with(|| self.0.cmp(&other.0))
    }
}

/// A scalar combination of free words; terms are kept sorted by deglex and
/// never store zero coefficients.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct FreePoly {
    terms: BTreeMap<Word, Scalar>,
}

impl FreePoly {
    pub fn zero() -> FreePoly {
        FreePoly::default()
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (Word, Scalar)>) -> FreePoly {
        let mut p = FreePoly::zero();
        for (w, c) in terms {
            p.insert(w, c);
        }
        p
    }

    pub fn monomial(w: Word, c: Scalar) -> FreePoly {
        FreePoly::from_terms([(w, c)])
    }

    fn insert(&mut self, w: Word, c: Scalar) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(w) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let s = e.get().add(&c);
                if s.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = s;
                }
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Word, &Scalar)> {
        self.terms.iter()
    }

    pub fn leading(&self) -> Option<(&Word, &Scalar)> {
        self.terms.iter().next_back()
    }

    pub fn degree(&self) -> Option<usize> {
        self.leading().map(|(w, _)| w.len())
    }

    pub fn add(&self, other: &FreePoly) -> FreePoly {
        let mut out = self.clone();
        for (w, c) in other.terms() {
            out.insert(w.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &FreePoly) -> FreePoly {
        let mut out = self.clone();
        for (w, c) in other.terms() {
            out.insert(w.clone(), c.neg());
        }
        out
    }

    pub fn scale(&self, c: &Scalar) -> FreePoly {
        FreePoly::from_terms(self.terms().map(|(w, s)| (w.clone(), s.mul(c))))
    }

    /// a * self * b with scalar multiple c.
    pub fn sandwich(&self, a: &Word, b: &Word, c: &Scalar) -> FreePoly {
        FreePoly::from_terms(
            self.terms()
                .map(|(w, s)| (a.concat(w).concat(b), s.mul(c))),
        )
    }

    pub fn mul(&self, other: &FreePoly) -> FreePoly {
        let mut out = FreePoly::zero();
        for (w1, c1) in self.terms() {
            for (w2, c2) in other.terms() {
                out.insert(w1.concat(w2), c1.mul(c2));
            }
        }
        out
    }
}

/// A finite presentation: generators, relation polynomials, and the degree
/// cap (irreducible words of degree >= cap are truncated to zero).
#[derive(Clone, Debug)]
pub struct NcPresentation {
    pub ring: ScalarRing,
    pub gens: Vec<String>,
    pub relations: Vec<FreePoly>,
    pub deg_cap: usize,
}

impl NcPresentation {
    pub fn new(
        ring: ScalarRing,
        gens: Vec<String>,
        relations: Vec<FreePoly>,
        deg_cap: usize,
    ) -> Result<NcPresentation> {
        if deg_cap < 1 {
            return Err(Error::Shape("degree cap must be at least 1".into()));
        }
        let relations = relations.into_iter().filter(|r| !r.is_zero()).collect();
        Ok(NcPresentation {
            ring,
            gens,
            relations,
            deg_cap,
        })
    }
}

#[derive(Clone, Debug)]
struct Rule {
    lhs: Word,
    rhs: FreePoly,
    ring: ScalarRing,
}

/// A completed rewriting system together with the monomial basis of the
/// truncated quotient.
#[derive(Clone, Debug)]
pub struct NormalFormEngine {
    pres: NcPresentation,
    rules: Vec<Rule>,
    basis: Vec<Word>,
    index: HashMap<Word, usize>,
}

/// Overlap completion of the presentation, restricted to overlap words of
/// degree < cap. Terminates because the set of reducible words below the
/// cap only grows. Requires field scalars.
pub fn complete(pres: &NcPresentation) -> Result<NormalFormEngine> {
    if !pres.ring.is_field() {
        return Err(Error::FieldRequired(pres.ring.to_string()));
    }
    let cap = pres.deg_cap;
    let mut polys: Vec<FreePoly> = pres.relations.clone();
    let mut rules: Vec<Rule>;
    let mut rounds = 0usize;
    loop {
        rounds += 1;
        if rounds > 1000 {
            return Err(Error::ExtensionFailed(
                "rewriting completion did not stabilize".into(),
            ));
        }
        rules = interreduce(polys.clone(), cap)?;

        let mut fresh: Vec<FreePoly> = Vec::new();
        for r1 in &rules {
            for r2 in &rules {
                for spoly in overlap_spolys(r1, r2, cap) {
                    let red = normal_form(&spoly, &rules);
                    if !red.is_zero() {
                        fresh.push(red);
                    }
                }
            }
        }
        if fresh.is_empty() {
            break;
        }
        polys = rules.iter().map(rule_to_poly).collect();
        polys.extend(fresh);
    }

    let basis = irreducible_words(&pres.gens, &rules, cap);
    let index = basis
        .iter()
        .enumerate()
        .map(|(i, w)| (w.clone(), i))
        .collect();
    Ok(NormalFormEngine {
        pres: pres.clone(),
        rules,
        basis,
        index,
    })
}

fn rule_to_poly(r: &Rule) -> FreePoly {
    FreePoly::monomial(r.lhs.clone(), Scalar::one(r.ring)).sub(&r.rhs)
}

/// Turns polynomials into a set of monic rules with mutually irreducible
/// left-hand sides.
fn interreduce(mut work: Vec<FreePoly>, cap: usize) -> Result<Vec<Rule>> {
    let mut rounds = 0usize;
    loop {
        rounds += 1;
        if rounds > 1000 {
            return Err(Error::ExtensionFailed("interreduction did not stabilize".into()));
        }
        work.sort_by(|a, b| a.leading().map(|(w, _)| w).cmp(&b.leading().map(|(w, _)| w)));
        let mut rules: Vec<Rule> = Vec::new();
        let mut changed = false;
        for p in &work {
            let q = normal_form(p, &rules);
            if q.is_zero() {
                changed = true;
                continue;
            }
            if q != *p {
                changed = true;
            }
            let (lw, lc) = q.leading().unwrap();
            if lw.len() >= cap {
                return Err(Error::ExtensionFailed(format!(
                    "relation leading word of degree {} reaches the cap {}",
                    lw.len(),
                    cap
                )));
            }
            let inv = lc.inverse().expect("field leading coefficient");
            let monic = q.scale(&inv);
            let (lw, _) = monic.leading().unwrap();
            let rhs = FreePoly::monomial(lw.clone(), Scalar::one(inv.ring())).sub(&monic);
            rules.push(Rule {
                lhs: lw.clone(),
                rhs,
                ring: inv.ring(),
            });
        }
        if !changed {
            return Ok(rules);
        }
        work = rules.iter().map(rule_to_poly).collect();
    }
}

/// All S-polynomials from proper overlaps (a suffix of lhs1 equals a prefix
/// of lhs2) whose overlap word stays below the cap. Inclusion overlaps are
/// handled by interreduction.
fn overlap_spolys(r1: &Rule, r2: &Rule, cap: usize) -> Vec<FreePoly> {
    let u = &r1.lhs;
    let v = &r2.lhs;
    let mut out = Vec::new();
    let max_shared = u.len().min(v.len());
    for shared in 1..max_shared {
        if u.0[u.len() - shared..] != v.0[..shared] {
            continue;
        }
        let overlap_len = u.len() + v.len() - shared;
        if overlap_len >= cap {
            continue;
        }
        let a = Word(u.0[..u.len() - shared].to_vec());
        let b = Word(v.0[shared..].to_vec());
        // w = u b = a v reduces two ways; their difference must vanish.
        let one = Scalar::one(r1.ring);
        let left = r1.rhs.sandwich(&Word::one(), &b, &one);
        let right = r2.rhs.sandwich(&a, &Word::one(), &one);
        out.push(left.sub(&right));
    }
    out
}

/// Full rewriting normal form (no truncation): repeatedly replace the
/// leftmost occurrence of the first matching rule inside the largest term.
fn normal_form(p: &FreePoly, rules: &[Rule]) -> FreePoly {
    let mut out = FreePoly::zero();
    let mut work = p.clone();
    while let Some((w, c)) = work.terms.iter().next_back().map(|(w, c)| (w.clone(), c.clone())) {
        work.terms.remove(&w);
        let mut hit = None;
        let mut best_pos = usize::MAX;
        for (ri, r) in rules.iter().enumerate() {
            if let Some(pos) = w.find(&r.lhs) {
                if pos < best_pos {
                    best_pos = pos;
                    hit = Some(ri);
                }
            }
        }
        match hit {
            None => {
                out.insert(w, c);
            }
            Some(ri) => {
                let r = &rules[ri];
                let a = Word(w.0[..best_pos].to_vec());
                let b = Word(w.0[best_pos + r.lhs.len()..].to_vec());
                let replaced = r.rhs.sandwich(&a, &b, &c);
                for (w2, c2) in replaced.terms() {
                    work.insert(w2.clone(), c2.clone());
                }
            }
        }
    }
    out
}

/// Irreducible words of degree < cap in deglex order. A word is reducible
/// iff some rule lhs occurs inside it, and irreducibility is factor-closed,
/// so BFS extension by one generator suffices.
fn irreducible_words(gens: &[String], rules: &[Rule], cap: usize) -> Vec<Word> {
    let mut basis = vec![Word::one()];
    let mut frontier = vec![Word::one()];
    for _ in 1..cap {
        let mut next = Vec::new();
        for w in &frontier {
            for g in 0..gens.len() {
                let wg = w.concat(&Word::gen(g));
                // Any new occurrence must use the last letter: checking all
                // suffixes of wg against the rule set is enough.
                let reducible = rules.iter().any(|r| {
                    r.lhs.len() <= wg.len()
                        && wg.0[wg.len() - r.lhs.len()..] == r.lhs.0[..]
                });
                if !reducible {
                    next.push(wg);
                }
            }
        }
        basis.extend(next.iter().cloned());
        frontier = next;
    }
    basis
}

impl NormalFormEngine {
    pub fn presentation(&self) -> &NcPresentation {
        &self.pres
    }

    pub fn basis(&self) -> &[Word] {
        &self.basis
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn rules_count(&self) -> usize {
        self.rules.len()
    }

    /// Rewriting normal form without truncation.
    pub fn nf(&self, p: &FreePoly) -> FreePoly {
        normal_form(p, &self.rules)
    }

    /// Normal form with irreducible words of degree >= cap dropped: the
    /// image in the truncated quotient.
    pub fn nf_truncated(&self, p: &FreePoly) -> FreePoly {
        FreePoly::from_terms(
            self.nf(p)
                .terms()
                .filter(|(w, _)| w.len() < self.pres.deg_cap)
                .map(|(w, c)| (w.clone(), c.clone())),
        )
    }

    /// Coordinates of a truncated normal form on the monomial basis.
    pub fn coords(&self, p: &FreePoly) -> Vec<Scalar> {
        let nf = self.nf_truncated(p);
        let mut out = vec![Scalar::zero(self.pres.ring); self.basis.len()];
        for (w, c) in nf.terms() {
            let i = *self
                .index
                .get(w)
                .expect("truncated normal form lies on the basis");
            out[i] = c.clone();
        }
        out
    }

    /// The structure-constant algebra on the monomial basis. Associativity
    /// of the truncated product is validated here; presentations whose
    /// truncation breaks it are rejected.
    pub fn to_algebra(&self) -> Result<Algebra> {
        let labels: Vec<String> = self
            .basis
            .iter()
            .map(|w| word_label(&self.pres.gens, &w.0))
            .collect();
        let one = Scalar::one(self.pres.ring);
        let mut table = Vec::with_capacity(self.basis.len() * self.basis.len());
        for wi in &self.basis {
            for wj in &self.basis {
                let prod = FreePoly::monomial(wi.concat(wj), one.clone());
                table.push(self.coords(&prod));
            }
        }
        let unit = self.coords(&FreePoly::monomial(Word::one(), one));
        Algebra::new(self.pres.ring, labels, table, unit)
    }

    /// Evaluates the assignment generator -> image on the quotient: every
    /// relation must map to zero and every truncated word of degree == cap
    /// must map to zero, otherwise the assignment defines no morphism.
    /// Returns the matrix of the induced linear map on the monomial basis.
    pub fn eval_map(&self, images: &[Element], target: &Algebra) -> Result<ScalarMatrix> {
        if images.len() != self.pres.gens.len() {
            return Err(Error::Shape("one image per generator required".into()));
        }
        for img in images {
            if img.algebra() != target {
                return Err(Error::Shape("image from a different target algebra".into()));
            }
        }
        if target.ring() != self.pres.ring {
            return Err(Error::FieldRequired(format!(
                "target ring {} differs from presentation ring {}",
                target.ring(),
                self.pres.ring
            )));
        }

        let word_image = |w: &Word| -> Element {
            let mut acc = target.one();
            for &g in &w.0 {
                acc = acc.mul(&images[g as usize]);
            }
            acc
        };

        for (ri, rel) in self.pres.relations.iter().enumerate() {
            let mut acc = target.zero();
            for (w, c) in rel.terms() {
                acc = acc.add(&word_image(w).scale(c));
            }
            if !acc.is_zero() {
                return Err(Error::RelationViolation(format!(
                    "relation #{ri} ({}) maps to {acc}",
                    render_free_poly(rel, &self.pres.gens)
                )));
            }
        }

        // Truncated words: irreducible extensions of the basis to degree
        // cap must die in the target.
        for w in &self.basis {
            if w.len() + 1 != self.pres.deg_cap {
                continue;
            }
            for g in 0..self.pres.gens.len() {
                let wg = w.concat(&Word::gen(g));
                let reducible = self.rules.iter().any(|r| wg.find(&r.lhs).is_some());
                if reducible {
                    continue;
                }
                let img = word_image(&wg);
                if !img.is_zero() {
                    return Err(Error::RelationViolation(format!(
                        "degree-cap word {} maps to {img}, not zero",
                        word_label(&self.pres.gens, &wg.0)
                    )));
                }
            }
        }

        let mut m = ScalarMatrix::zero(target.ring(), target.dim(), self.basis.len());
        for (j, w) in self.basis.iter().enumerate() {
            let img = word_image(w);
            for i in 0..target.dim() {
                m.set(i, j, img.coords()[i].clone());
            }
        }
        Ok(m)
    }
}

pub fn render_free_poly(p: &FreePoly, gens: &[String]) -> String {
    if p.is_zero() {
        return "0".to_string();
    }
    p.terms()
        .map(|(w, c)| {
            let label = word_label(gens, &w.0);
            if w.is_empty() {
                format!("{c}")
            } else if c.is_one() {
                label
            } else {
                format!("{c}*{label}")
            }
        })
        .collect::<Vec<_>>()
        .join(" + ")
}

impl fmt::Display for NcPresentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "<{} | {} relations, deg < {}>",
            self.gens.join(", "),
            self.relations.len(),
            self.deg_cap
        )
    }
}
