//! Permutations and small permutation groups.
//!
//! Points are 0-based internally and 1-based in cycle notation. Products
//! compose right to left: `(g h)(x) = g(h(x))`.

use std::collections::HashMap;
use std::fmt;

use crate::error::{Error, Result};

/// Default limit on the order of an enumerated group.
pub const DEFAULT_MAX_GROUP_ORDER: usize = 20_000;

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Perm(Vec<u16>);

impl Perm {
    pub fn identity(degree: usize) -> Self {
        Perm((0..degree as u16).collect())
    }

    /// From a 0-based image list; must be a bijection.
    pub fn from_images(images: Vec<u16>) -> Result<Self> {
        let mut seen = vec![false; images.len()];
        for &i in &images {
            if (i as usize) >= images.len() || std::mem::replace(&mut seen[i as usize], true) {
                return Err(Error::Parse(format!("{images:?} is not a permutation")));
            }
        }
        Ok(Perm(images))
    }

    pub fn degree(&self) -> usize {
        self.0.len()
    }

    pub fn image(&self, x: usize) -> usize {
        self.0[x] as usize
    }

    pub fn images(&self) -> &[u16] {
        &self.0
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &Perm) -> Perm {
        assert_eq!(self.degree(), other.degree(), "composing permutations of different degrees");
        Perm(other.0.iter().map(|&x| self.0[x as usize]).collect())
    }

    pub fn inverse(&self) -> Perm {
        let mut inv = vec![0u16; self.0.len()];
        for (i, &x) in self.0.iter().enumerate() {
            inv[x as usize] = i as u16;
        }
        Perm(inv)
    }

    pub fn is_identity(&self) -> bool {
        self.0.iter().enumerate().all(|(i, &x)| i == x as usize)
    }

    pub fn pow(&self, e: u64) -> Perm {
        let mut out = Perm::identity(self.degree());
        for _ in 0..e {
            out = self.compose(&out);
        }
        out
    }

    pub fn order(&self) -> u64 {
        let mut g = self.clone();
        let mut k = 1;
        while !g.is_identity() {
            g = self.compose(&g);
            k += 1;
        }
        k
    }

    /// Parses cycle notation such as `(1 2)(3 4)`, `(1,2,3)` or `()`.
    pub fn parse(text: &str, degree: usize) -> Result<Perm> {
        let mut images: Vec<u16> = (0..degree as u16).collect();
        let mut seen = vec![false; degree];
        let mut rest = text.trim();
        if rest.is_empty() {
            return Err(Error::Parse("empty permutation".into()));
        }
        while !rest.is_empty() {
            let body_start = rest.strip_prefix('(').ok_or_else(|| Error::Parse(format!("expected '(' in {text:?}")))?;
            let close = body_start.find(')').ok_or_else(|| Error::Parse(format!("unclosed cycle in {text:?}")))?;
            let body = &body_start[..close];
            rest = body_start[close + 1..].trim_start();
            let points: Vec<usize> = body
                .split(|c: char| c == ',' || c.is_whitespace())
                .filter(|s| !s.is_empty())
                .map(|s| {
                    let v: usize = s.parse().map_err(|_| Error::Parse(format!("bad point {s:?} in {text:?}")))?;
                    if v == 0 || v > degree {
                        return Err(Error::Parse(format!("point {v} out of range 1..={degree}")));
                    }
                    Ok(v - 1)
                })
                .collect::<Result<_>>()?;
            for &pt in &points {
                if std::mem::replace(&mut seen[pt], true) {
                    return Err(Error::Parse(format!("point {} repeated in {text:?}", pt + 1)));
                }
            }
            for (i, &pt) in points.iter().enumerate() {
                images[pt] = points[(i + 1) % points.len()] as u16;
            }
        }
        Ok(Perm(images))
    }

    /// Disjoint cycle notation, 1-based, fixed points omitted.
    pub fn cycle_notation(&self) -> String {
        let mut seen = vec![false; self.degree()];
        let mut out = String::new();
        for start in 0..self.degree() {
            if seen[start] || self.image(start) == start {
                continue;
            }
            let mut cycle = Vec::new();
            let mut x = start;
            while !seen[x] {
                seen[x] = true;
                cycle.push((x + 1).to_string());
                x = self.image(x);
            }
            out.push('(');
            out.push_str(&cycle.join(" "));
            out.push(')');
        }
        if out.is_empty() {
            out.push_str("()");
        }
        out
    }
}

impl fmt::Debug for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.cycle_notation())
    }
}

impl fmt::Display for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.cycle_notation())
    }
}

/// A permutation group with all elements enumerated breadth-first from the
/// identity. Each non-identity element records the generator that reached it
/// and its predecessor, giving a word in the generators.
#[derive(Clone, Debug)]
pub struct PermGroup {
    degree: usize,
    generators: Vec<Perm>,
    elements: Vec<Perm>,
    index: HashMap<Perm, usize>,
    /// `(predecessor, generator)` with `elements[i] = gens[gen] ∘ elements[pred]`.
    parent: Vec<Option<(usize, usize)>>,
}

impl PermGroup {
    pub fn enumerate(degree: usize, generators: Vec<Perm>, max_order: usize) -> Result<Self> {
        if generators.iter().any(|g| g.degree() != degree) {
            return Err(Error::Parse(format!("generator of the wrong degree (expected {degree})")));
        }
        let id = Perm::identity(degree);
        let mut elements = vec![id.clone()];
        let mut index = HashMap::from([(id, 0usize)]);
        let mut parent = vec![None];
        let mut head = 0;
        while head < elements.len() {
            for (gi, g) in generators.iter().enumerate() {
                let next = g.compose(&elements[head]);
                if !index.contains_key(&next) {
                    if elements.len() == max_order {
                        return Err(Error::Guardrail(format!("group order exceeds {max_order}")));
                    }
                    index.insert(next.clone(), elements.len());
                    elements.push(next);
                    parent.push(Some((head, gi)));
                }
            }
            head += 1;
        }
        Ok(PermGroup { degree, generators, elements, index, parent })
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn generators(&self) -> &[Perm] {
        &self.generators
    }

    pub fn elements(&self) -> &[Perm] {
        &self.elements
    }

    pub fn element(&self, i: usize) -> &Perm {
        &self.elements[i]
    }

    pub fn index_of(&self, g: &Perm) -> Option<usize> {
        self.index.get(g).copied()
    }

    pub fn contains(&self, g: &Perm) -> bool {
        self.index.contains_key(g)
    }

    /// Index of `elements[a] ∘ elements[b]`.
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.index[&self.elements[a].compose(&self.elements[b])]
    }

    pub fn inv(&self, a: usize) -> usize {
        self.index[&self.elements[a].inverse()]
    }

    /// Generator indices `[j_1, ..., j_m]` with `elements[i] = gens[j_m] ∘ ... ∘ gens[j_1]`.
    pub fn word(&self, mut i: usize) -> Vec<usize> {
        let mut w = Vec::new();
        while let Some((pred, g)) = self.parent[i] {
            w.push(g);
            i = pred;
        }
        w.reverse();
        w
    }

    pub fn parent(&self, i: usize) -> Option<(usize, usize)> {
        self.parent[i]
    }
}

fn content_lines(text: &str) -> impl Iterator<Item = &str> {
    text.lines().map(|l| l.split('#').next().unwrap_or("").trim()).filter(|l| !l.is_empty())
}

/// Group file: the degree on the first line, then one generator per line in
/// cycle notation. `#` starts a comment.
pub fn parse_group_file(text: &str) -> Result<(usize, Vec<Perm>)> {
    let mut lines = content_lines(text);
    let first = lines.next().ok_or_else(|| Error::Parse("empty group file".into()))?;
    let degree: usize = first.parse().map_err(|_| Error::Parse(format!("expected the degree, found {first:?}")))?;
    if degree == 0 || degree > u16::MAX as usize {
        return Err(Error::Parse(format!("unsupported degree {degree}")));
    }
    let gens = lines.map(|l| Perm::parse(l, degree)).collect::<Result<Vec<_>>>()?;
    if gens.is_empty() {
        return Err(Error::Parse("group file lists no generators".into()));
    }
    Ok((degree, gens))
}

/// Sylow file: one permutation per line, the images of the generators of P.
pub fn parse_sylow_file(text: &str, degree: usize) -> Result<Vec<Perm>> {
    content_lines(text).map(|l| Perm::parse(l, degree)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn perm(s: &str, n: usize) -> Perm {
        Perm::parse(s, n).unwrap()
    }

    #[test]
    fn parse_and_print() {
        let g = perm("(1 2)(3 4)", 4);
        assert_eq!(g.images(), &[1, 0, 3, 2]);
        assert_eq!(g.cycle_notation(), "(1 2)(3 4)");
        assert_eq!(perm("(1,2,3)", 3).cycle_notation(), "(1 2 3)");
        assert!(perm("()", 5).is_identity());
        assert_eq!(perm("()", 5).cycle_notation(), "()");
        for bad in ["(1 2", "1 2)", "(1 6)", "(1 1)", "(a b)", "(0 1)", "", "(1 2)(2 3)"] {
            assert!(Perm::parse(bad, 5).is_err(), "{bad:?} should fail");
        }
    }

    #[test]
    fn composition_order_is_right_to_left() {
        let a = perm("(1 2)", 3);
        let b = perm("(2 3)", 3);
        // a∘b sends 2 -> 3 -> 3 and 3 -> 2 -> 1
        assert_eq!(a.compose(&b), perm("(1 2 3)", 3));
        assert_eq!(a.compose(&b).order(), 3);
        assert!(a.compose(&a.inverse()).is_identity());
    }

    #[test]
    fn group_orders() {
        let c2 = PermGroup::enumerate(2, vec![perm("(1 2)", 2)], 100).unwrap();
        assert_eq!(c2.order(), 2);
        let a4 = PermGroup::enumerate(4, vec![perm("(1 2 3)", 4), perm("(1 2)(3 4)", 4)], 100).unwrap();
        assert_eq!(a4.order(), 12);
        let a5 = PermGroup::enumerate(5, vec![perm("(1 2 3)", 5), perm("(1 2 3 4 5)", 5)], 100).unwrap();
        assert_eq!(a5.order(), 60);
        assert!(matches!(PermGroup::enumerate(5, vec![perm("(1 2)", 5), perm("(1 2 3 4 5)", 5)], 100), Err(Error::Guardrail(_))));
    }

    #[test]
    fn words_reproduce_elements() {
        let a4 = PermGroup::enumerate(4, vec![perm("(1 2 3)", 4), perm("(1 2)(3 4)", 4)], 100).unwrap();
        for i in 0..a4.order() {
            let mut g = Perm::identity(4);
            for j in a4.word(i) {
                g = a4.generators()[j].compose(&g);
            }
            assert_eq!(&g, a4.element(i));
        }
        assert_eq!(a4.index_of(&Perm::identity(4)), Some(0));
    }

    #[test]
    fn file_formats() {
        let (deg, gens) = parse_group_file("# A4\n4\n(1 2 3)\n(1 2)(3 4)  # double transposition\n").unwrap();
        assert_eq!(deg, 4);
        assert_eq!(gens.len(), 2);
        assert!(parse_group_file("").is_err());
        assert!(parse_group_file("4\n").is_err());
        assert!(parse_group_file("four\n(1 2)").is_err());
        let syl = parse_sylow_file("(1 2)(3 4)\n(1 3)(2 4)\n", 4).unwrap();
        assert_eq!(syl.len(), 2);
    }
}
