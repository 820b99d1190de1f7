//! Dense reduced row-echelon forms over F_p.

use super::field::Field;

const NO_ROW: u32 = u32::MAX;

/// A matrix in reduced row-echelon form: rows sorted by pivot, each pivot
/// entry 1 and the only nonzero in its column.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Echelon {
    width: usize,
    pivots: Vec<u32>,
    data: Vec<u8>,
}

impl Echelon {
    pub fn zero(width: usize) -> Echelon {
        Echelon {
            width,
            pivots: Vec::new(),
            data: Vec::new(),
        }
    }

    pub fn identity(width: usize) -> Echelon {
        let mut data = vec![0u8; width * width];
        for i in 0..width {
            data[i * width + i] = 1;
        }
        Echelon {
            width,
            pivots: (0..width as u32).collect(),
            data,
        }
    }

    /// Trusts the caller that `rows` are already in canonical form.
    pub(crate) fn from_canonical(width: usize, rows: Vec<Vec<u8>>) -> Echelon {
        let pivots = rows
            .iter()
            .map(|r| r.iter().position(|&c| c != 0).expect("nonzero row") as u32)
            .collect();
        Echelon {
            width,
            pivots,
            data: rows.concat(),
        }
    }

    pub fn from_rows(
        field: &Field,
        width: usize,
        rows: impl IntoIterator<Item = Vec<u8>>,
    ) -> Echelon {
        let mut b = EchelonBuilder::new(field, width);
        for r in rows {
            b.insert(r);
        }
        b.finish()
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    pub fn pivots(&self) -> &[u32] {
        &self.pivots
    }

    pub fn row(&self, i: usize) -> &[u8] {
        &self.data[i * self.width..(i + 1) * self.width]
    }

    pub fn rows(&self) -> impl Iterator<Item = &[u8]> + '_ {
        (0..self.rank()).map(|i| self.row(i))
    }

    /// Reduces `v` against every row in place; `v` ends up zero exactly
    /// when it was in the row space.
    pub fn reduce(&self, field: &Field, v: &mut [u8]) {
        for (i, &pc) in self.pivots.iter().enumerate() {
            let pc = pc as usize;
            let c = v[pc];
            if c != 0 {
                field.axpy(&mut v[pc..], &self.row(i)[pc..], field.neg(c));
            }
        }
    }

    pub fn contains(&self, field: &Field, v: &[u8]) -> bool {
        let mut w = v.to_vec();
        self.reduce(field, &mut w);
        w.iter().all(|&c| c == 0)
    }

    /// Coefficients of `v` in the row basis, or `None` if `v` is outside.
    pub fn coordinates(&self, field: &Field, v: &[u8]) -> Option<Vec<u8>> {
        let coords: Vec<u8> = self.pivots.iter().map(|&pc| v[pc as usize]).collect();
        self.contains(field, v).then_some(coords)
    }

    /// Row space of `self` plus the given rows.
    pub fn extended(&self, field: &Field, rows: impl IntoIterator<Item = Vec<u8>>) -> Echelon {
        let mut b = EchelonBuilder::seeded(field, self);
        for r in rows {
            b.insert(r);
        }
        b.finish()
    }

    pub fn sum(&self, field: &Field, other: &Echelon) -> Echelon {
        self.extended(field, other.rows().map(|r| r.to_vec()))
    }

    pub fn is_subspace_of(&self, field: &Field, other: &Echelon) -> bool {
        self.rows().all(|r| other.contains(field, r))
    }

    /// Row space intersection by the Zassenhaus trick: reduce `[a | a]`
    /// and `[b | 0]` together; rows with vanishing left half span the
    /// intersection in their right half.
    pub fn intersect(&self, field: &Field, other: &Echelon) -> Echelon {
        let w = self.width;
        if self.rank() == 0 || other.rank() == 0 {
            return Echelon::zero(w);
        }
        let mut b = EchelonBuilder::new(field, 2 * w);
        for r in self.rows() {
            let mut row = r.to_vec();
            row.extend_from_slice(r);
            b.insert(row);
        }
        for r in other.rows() {
            let mut row = r.to_vec();
            row.resize(2 * w, 0);
            b.insert(row);
        }
        let joint = b.finish();
        let inter = joint
            .rows()
            .filter(|r| r[..w].iter().all(|&c| c == 0))
            .map(|r| r[w..].to_vec());
        Echelon::from_rows(field, w, inter)
    }
}

/// Incremental elimination. Inserted rows are fully reduced against the
/// rows already present, so each stored row vanishes at earlier pivots;
/// `finish` back-substitutes to reach the canonical form.
pub struct EchelonBuilder<'f> {
    field: &'f Field,
    width: usize,
    rows: Vec<Vec<u8>>,
    pivots: Vec<u32>,
    pivot_row: Vec<u32>,
}

impl<'f> EchelonBuilder<'f> {
    pub fn new(field: &'f Field, width: usize) -> Self {
        EchelonBuilder {
            field,
            width,
            rows: Vec::new(),
            pivots: Vec::new(),
            pivot_row: vec![NO_ROW; width],
        }
    }

    pub fn seeded(field: &'f Field, e: &Echelon) -> Self {
        let mut b = EchelonBuilder::new(field, e.width);
        for (i, r) in e.rows().enumerate() {
            b.pivot_row[e.pivots[i] as usize] = i as u32;
            b.pivots.push(e.pivots[i]);
            b.rows.push(r.to_vec());
        }
        b
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Eliminates every pivot column from `v`; returns its new leading
    /// column, if any.
    pub fn reduce(&self, v: &mut [u8]) -> Option<usize> {
        debug_assert_eq!(v.len(), self.width);
        let mut lead = None;
        for c in 0..self.width {
            let x = v[c];
            if x == 0 {
                continue;
            }
            let r = self.pivot_row[c];
            if r != NO_ROW {
                let row = &self.rows[r as usize];
                self.field.axpy(&mut v[c..], &row[c..], self.field.neg(x));
            } else if lead.is_none() {
                lead = Some(c);
            }
        }
        lead
    }

    pub fn contains(&self, v: &[u8]) -> bool {
        let mut w = v.to_vec();
        self.reduce(&mut w).is_none()
    }

    /// Adds `v` to the span; returns whether it was independent.
    pub fn insert(&mut self, mut v: Vec<u8>) -> bool {
        let Some(lead) = self.reduce(&mut v) else {
            return false;
        };
        let inv = self.field.inv(v[lead]);
        self.field.scale(&mut v[lead..], inv);
        self.pivot_row[lead] = self.rows.len() as u32;
        self.pivots.push(lead as u32);
        self.rows.push(v);
        true
    }

    pub fn finish(self) -> Echelon {
        let EchelonBuilder {
            field,
            width,
            rows,
            pivots,
            ..
        } = self;
        let mut order: Vec<usize> = (0..rows.len()).collect();
        order.sort_by_key(|&i| pivots[i]);
        let mut sorted: Vec<Vec<u8>> = Vec::with_capacity(rows.len());
        let mut rows: Vec<Option<Vec<u8>>> = rows.into_iter().map(Some).collect();
        for &i in &order {
            sorted.push(rows[i].take().unwrap());
        }
        let sorted_pivots: Vec<usize> = order.iter().map(|&i| pivots[i] as usize).collect();
        // rows with larger pivots are final before they are used
        for i in (0..sorted.len()).rev() {
            let (head, tail) = sorted.split_at_mut(i + 1);
            let row = &mut head[i];
            for (j, later) in tail.iter().enumerate() {
                let pc = sorted_pivots[i + 1 + j];
                let c = row[pc];
                if c != 0 {
                    field.axpy(&mut row[pc..], &later[pc..], field.neg(c));
                }
            }
        }
        Echelon {
            width,
            pivots: sorted_pivots.iter().map(|&c| c as u32).collect(),
            data: sorted.concat(),
        }
    }
}
