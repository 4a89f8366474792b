//! Signed Gauss codes and the combinatorial moves that shrink them.
//!
//! A code lists the crossings in the order the curve visits them starting
//! from the base point; every label occurs twice. Only the destroying moves
//! (Ia removes a monogon, IIa removes a bigon) have applicators. The other
//! kinds exist so homotopy logs can name them.

use crate::curve::{ClosedPolyCurve, Crossing, Param};
use crate::error::{Error, Result};
use serde::{Deserialize, Serialize};

/// Kinds of homotopy moves: `a` variants destroy a monogon or bigon, `b`
/// variants create one, and III moves a strand over a crossing.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum MoveKind {
    Ia,
    Ib,
    IIa,
    IIb,
    III,
}

impl MoveKind {
    /// Change in crossing count caused by one move of this kind.
    pub fn crossing_delta(self) -> i64 {
        match self {
            MoveKind::Ia => -1,
            MoveKind::Ib => 1,
            MoveKind::IIa => -2,
            MoveKind::IIb => 2,
            MoveKind::III => 0,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct GaussEntry {
    pub label: usize,
    pub sign: i8,
}

/// Crossing visits in curve order from the base point.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GaussCode {
    pub entries: Vec<GaussEntry>,
}

impl GaussCode {
    /// Build from labels and per-label signs. Every label must occur twice.
    pub fn new(entries: Vec<GaussEntry>) -> Result<GaussCode> {
        let mut counts = std::collections::BTreeMap::new();
        for e in &entries {
            *counts.entry(e.label).or_insert(0usize) += 1;
        }
        if let Some((l, c)) = counts.iter().find(|(_, &c)| c != 2) {
            return Err(Error::DegenerateInput(format!("label {l} occurs {c} times")));
        }
        Ok(GaussCode { entries })
    }

    /// Read the code off a normal curve and its crossings.
    pub fn from_curve(_curve: &ClosedPolyCurve, crossings: &[Crossing]) -> GaussCode {
        let mut visits: Vec<(Param, GaussEntry)> = crossings
            .iter()
            .flat_map(|c| {
                let e = GaussEntry { label: c.id, sign: c.sign };
                [(c.t1, e), (c.t2, e)]
            })
            .collect();
        visits.sort_by_key(|a| a.0);
        GaussCode {
            entries: visits.into_iter().map(|(_, e)| e).collect(),
        }
    }

    pub fn labels(&self) -> Vec<usize> {
        self.entries.iter().map(|e| e.label).collect()
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn crossing_count(&self) -> usize {
        self.entries.len() / 2
    }

    fn positions(&self, label: usize) -> Vec<usize> {
        self.entries
            .iter()
            .enumerate()
            .filter(|(_, e)| e.label == label)
            .map(|(i, _)| i)
            .collect()
    }

    fn cyclic_adjacent(&self, a: usize, b: usize) -> bool {
        let n = self.entries.len();
        (a + 1) % n == b || (b + 1) % n == a
    }

    /// Rename labels to 1..n in order of first occurrence.
    pub fn relabeled(&self) -> GaussCode {
        let mut map = std::collections::HashMap::new();
        let entries = self
            .entries
            .iter()
            .map(|e| {
                let next = map.len() + 1;
                let label = *map.entry(e.label).or_insert(next);
                GaussEntry { label, sign: e.sign }
            })
            .collect();
        GaussCode { entries }
    }

    fn without(&self, labels: &[usize]) -> GaussCode {
        GaussCode {
            entries: self
                .entries
                .iter()
                .filter(|e| !labels.contains(&e.label))
                .copied()
                .collect(),
        }
    }
}

impl std::fmt::Display for GaussCode {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let parts: Vec<String> = self
            .entries
            .iter()
            .map(|e| format!("{}{}", e.label, if e.sign > 0 { "+" } else { "-" }))
            .collect();
        write!(f, "[{}]", parts.join(" "))
    }
}

/// Labels whose two visits are cyclically adjacent, ascending.
pub fn find_monogons(code: &GaussCode) -> Vec<usize> {
    let mut out: Vec<usize> = code
        .labels()
        .into_iter()
        .filter(|&l| {
            let p = code.positions(l);
            code.cyclic_adjacent(p[0], p[1])
        })
        .collect();
    out.sort_unstable();
    out.dedup();
    out
}

/// Label pairs `(a, b)`, `a < b`, visited consecutively on both passes.
pub fn find_bigons(code: &GaussCode) -> Vec<(usize, usize)> {
    let n = code.len();
    let mut pairs = std::collections::BTreeMap::<(usize, usize), usize>::new();
    if n < 4 {
        return Vec::new();
    }
    for i in 0..n {
        let a = code.entries[i].label;
        let b = code.entries[(i + 1) % n].label;
        if a != b {
            *pairs.entry((a.min(b), a.max(b))).or_insert(0) += 1;
        }
    }
    pairs.into_iter().filter(|&(_, c)| c >= 2).map(|(k, _)| k).collect()
}

#[allow(non_snake_case)]
pub fn apply_Ia(code: &GaussCode, label: usize) -> Result<GaussCode> {
    if !find_monogons(code).contains(&label) {
        return Err(Error::MoveNotApplicable(format!("no monogon at crossing {label}")));
    }
    Ok(code.without(&[label]))
}

#[allow(non_snake_case)]
pub fn apply_IIa(code: &GaussCode, pair: (usize, usize)) -> Result<GaussCode> {
    let key = (pair.0.min(pair.1), pair.0.max(pair.1));
    if !find_bigons(code).contains(&key) {
        return Err(Error::MoveNotApplicable(format!(
            "no bigon between crossings {} and {}",
            pair.0, pair.1
        )));
    }
    Ok(code.without(&[pair.0, pair.1]))
}

/// Greedily apply Ia, then IIa, moves until none applies. Returns the moves
/// taken and the final code, which is empty when the reduction succeeded.
pub fn reduce(code: &GaussCode) -> (Vec<(MoveKind, Vec<usize>)>, GaussCode) {
    let mut code = code.clone();
    let mut log = Vec::new();
    loop {
        if let Some(&l) = find_monogons(&code).first() {
            code = code.without(&[l]);
            log.push((MoveKind::Ia, vec![l]));
        } else if let Some(&(a, b)) = find_bigons(&code).first() {
            code = code.without(&[a, b]);
            log.push((MoveKind::IIa, vec![a, b]));
        } else {
            return (log, code);
        }
    }
}

/// Whitney's combinatorial rotation number: the turn at an extreme base
/// vertex plus one signed term per crossing. Requires the base point on the
/// outer boundary, which holds when it is a vertex of the convex hull.
pub fn whitney_combinatorial(curve: &ClosedPolyCurve, crossings: &[Crossing]) -> Option<i64> {
    let pts = curve.points();
    let n = pts.len();
    let base = pts[0];
    let extreme = pts.iter().all(|p| (p.x, p.y) >= (base.x, base.y));
    if !extreme {
        return None;
    }
    let mu = if crate::geom::orient(pts[n - 1], base, pts[1]) > 0.0 { 1 } else { -1 };
    Some(mu - crossings.iter().map(|c| c.sign as i64).sum::<i64>())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arrangement::whitney_index;
    use crate::curve::detect_crossings;
    use crate::geom::Point2;

    fn code(labels: &[usize]) -> GaussCode {
        GaussCode::new(labels.iter().map(|&label| GaussEntry { label, sign: 1 }).collect()).unwrap()
    }

    fn curve(pts: &[(f64, f64)]) -> ClosedPolyCurve {
        ClosedPolyCurve::new(pts.iter().map(|&(x, y)| Point2::new(x, y)).collect(), 0).unwrap()
    }

    #[test]
    fn codes_of_square_and_bowtie() {
        let sq = curve(&[(0., 0.), (1., 0.), (1., 1.), (0., 1.)]);
        assert!(GaussCode::from_curve(&sq, &[]).is_empty());
        let b = curve(&[(0., 0.), (2., 2.), (2., 0.), (0., 2.)]);
        let xs = detect_crossings(&b, 1e-9).unwrap();
        let g = GaussCode::from_curve(&b, &xs);
        assert_eq!(g.labels(), vec![1, 1]);
        assert_eq!(g.entries[0].sign, xs[0].sign);
    }

    #[test]
    fn monogons() {
        assert_eq!(find_monogons(&code(&[1, 1])), vec![1]);
        assert!(find_monogons(&code(&[])).is_empty());
        assert!(find_monogons(&code(&[1, 2, 1, 2])).is_empty());
        // Adjacency wraps around the end of the code.
        assert_eq!(find_monogons(&code(&[1, 2, 2, 3, 3, 1])), vec![1, 2, 3]);
    }

    #[test]
    fn moves_apply_or_refuse() {
        assert!(apply_Ia(&code(&[1, 1]), 1).unwrap().is_empty());
        assert!(matches!(apply_Ia(&code(&[1, 2, 1, 2]), 1), Err(Error::MoveNotApplicable(_))));
        assert!(apply_IIa(&code(&[1, 2, 1, 2]), (1, 2)).unwrap().is_empty());
        assert!(matches!(apply_IIa(&code(&[1, 2, 3, 4, 1, 2, 3, 4]), (1, 3)), Err(Error::MoveNotApplicable(_))));
    }

    #[test]
    fn label_counts_are_checked() {
        assert!(GaussCode::new(vec![GaussEntry { label: 1, sign: 1 }]).is_err());
    }

    #[test]
    fn reduction_of_small_codes() {
        let (log, rest) = reduce(&code(&[1, 2, 3, 1, 2, 3]));
        assert!(rest.is_empty());
        assert_eq!(log.len(), 2);
    }

    #[test]
    fn combinatorial_whitney_matches_geometry() {
        let cases: &[&[(f64, f64)]] = &[
            &[(0., 0.), (2., 2.), (2., 0.), (0., 2.)],
            &[(0., 0.), (1., 0.), (1., 1.), (0., 1.)],
            &[(0., 0.), (0., 1.), (1., 1.), (1., 0.)],
        ];
        for pts in cases {
            let c = curve(pts);
            let xs = detect_crossings(&c, 1e-9).unwrap();
            assert_eq!(whitney_combinatorial(&c, &xs), Some(whitney_index(&c).unwrap()));
        }
    }
}
