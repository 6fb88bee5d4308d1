//! Unoriented crossing graphs and their conversion to PD codes.
//!
//! A crossing lists four edge ids counterclockwise; slots 0 and 2 are the
//! understrand, slots 1 and 3 the overstrand.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use thiserror::Error;

use super::pd::PdCode;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DiagramError {
    #[error("the diagram has {0} components; a knot is required")]
    Components(usize),
    #[error("edge {0} does not have exactly two endpoints")]
    Dangling(usize),
}

#[derive(Debug, Default)]
pub(crate) struct Builder {
    pub crossings: Vec<[usize; 4]>,
    parent: Vec<usize>,
}

impl Builder {
    pub fn fresh(&mut self) -> usize {
        self.parent.push(self.parent.len());
        self.parent.len() - 1
    }

    fn find(&mut self, x: usize) -> usize {
        let mut r = x;
        while self.parent[r] != r {
            r = self.parent[r];
        }
        self.parent[x] = r;
        r
    }

    pub fn join(&mut self, a: usize, b: usize) {
        let (a, b) = (self.find(a), self.find(b));
        if a != b {
            self.parent[a.max(b)] = a.min(b);
        }
    }

    /// Orient along the strand entering crossing 0 at slot 0 and label
    /// edges `1..=2n` in order of traversal.
    pub fn into_pd(mut self) -> Result<PdCode, DiagramError> {
        let ids: Vec<usize> = (0..self.parent.len()).collect();
        let mut roots = alloc::collections::BTreeSet::new();
        for &i in &ids {
            roots.insert(self.find(i));
        }
        let crossings: Vec<[usize; 4]> = self
            .crossings
            .clone()
            .into_iter()
            .map(|c| c.map(|e| self.find(e)))
            .collect();
        let mut occ: BTreeMap<usize, Vec<(usize, usize)>> = BTreeMap::new();
        for (c, t) in crossings.iter().enumerate() {
            for (s, &e) in t.iter().enumerate() {
                occ.entry(e).or_default().push((c, s));
            }
        }
        if let Some((&e, _)) = occ.iter().find(|(_, v)| v.len() != 2) {
            return Err(DiagramError::Dangling(e));
        }
        let loops = roots.len() - occ.len();
        if crossings.is_empty() {
            return if loops == 1 {
                Ok(PdCode::new(Vec::new()).expect("empty code"))
            } else {
                Err(DiagramError::Components(loops))
            };
        }
        let mut label: BTreeMap<usize, u32> = BTreeMap::new();
        let mut under_in = alloc::vec![usize::MAX; crossings.len()];
        let (mut c, mut s) = (0usize, 0usize);
        under_in[0] = 0;
        loop {
            let t = (s + 2) % 4;
            let e = crossings[c][t];
            let next = label.len() as u32 + 1;
            label.insert(e, next);
            let &(c2, s2) = occ[&e]
                .iter()
                .find(|&&x| x != (c, t))
                .expect("two endpoints");
            c = c2;
            s = s2;
            if s % 2 == 0 {
                under_in[c] = s;
            }
            if (c, s) == (0, 0) {
                break;
            }
        }
        let components = loops + 1 + usize::from(label.len() < occ.len());
        if components > 1 {
            return Err(DiagramError::Components(components));
        }
        let tuples = crossings
            .iter()
            .zip(&under_in)
            .map(|(t, &s)| core::array::from_fn(|k| label[&t[(s + k) % 4]]))
            .collect();
        Ok(PdCode::new(tuples).expect("traced labels are consistent"))
    }
}
