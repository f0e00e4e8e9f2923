//! Graded 1- and 2-forms on `(M, Ω(M))`, tabulated on a basis of derivations.
//!
//! Values on coefficiented arguments follow one fixed extension rule:
//! `⟨βE₁;λ⟩ = β∧⟨E₁;λ⟩`, `⟨βE₁,E₂;Θ⟩ = β∧⟨E₁,E₂;Θ⟩` and
//! `⟨E₁,βE₂;Θ⟩ = (−1)^{|β||E₁|} β∧⟨E₁,E₂;Θ⟩`.

use std::sync::Arc;

use super::space::{Basis, GradedSpace};
use crate::exterior::{Derivation, Form};
use crate::geometry::Matrix;

fn parity_sign(e: i64) -> bool {
    e.rem_euclid(2) == 1
}

/// A graded 1-form of bidegree `(1, weight)`.
#[derive(Clone, Debug)]
pub struct GradedOneForm {
    space: Arc<GradedSpace>,
    basis: Basis,
    values: Vec<Form>,
    weight: i64,
}

impl GradedOneForm {
    pub fn new(space: Arc<GradedSpace>, basis: Basis, values: Vec<Form>, weight: i64) -> Self {
        assert_eq!(values.len(), 2 * space.dim(), "one value per basic derivation");
        GradedOneForm {
            space,
            basis,
            values,
            weight,
        }
    }

    /// `d^Gα`, tabulating `⟨E;d^Gα⟩ = E(α)`.
    pub fn exact(space: Arc<GradedSpace>, basis: Basis, alpha: &Form) -> Self {
        let values = space
            .basis(basis)
            .derivations
            .iter()
            .map(|e| e.apply(alpha))
            .collect();
        let weight = alpha.max_degree().unwrap_or(0) as i64;
        GradedOneForm::new(space, basis, values, weight)
    }

    pub fn space(&self) -> &Arc<GradedSpace> {
        &self.space
    }

    pub fn basis(&self) -> Basis {
        self.basis
    }

    pub fn weight(&self) -> i64 {
        self.weight
    }

    pub fn values(&self) -> &[Form] {
        &self.values
    }

    /// Value on the degree-0 basic derivation of slot `a`.
    pub fn on_lie(&self, a: usize) -> &Form {
        &self.values[a]
    }

    /// Value on `i_{∂_a}`.
    pub fn on_ins(&self, a: usize) -> &Form {
        &self.values[self.space.dim() + a]
    }

    pub fn eval(&self, d: &Derivation) -> Form {
        let coeffs = self.space.decompose(d, self.basis);
        let mut out = Form::zero(self.space.dim());
        for (u, v) in coeffs.iter().zip(&self.values) {
            if !u.is_zero() && !v.is_zero() {
                out = out + u.wedge(v);
            }
        }
        out
    }

    /// The same form tabulated on another basis.
    pub fn to_basis(&self, basis: Basis) -> GradedOneForm {
        if basis == self.basis {
            return self.clone();
        }
        let values = self
            .space
            .basis(basis)
            .derivations
            .iter()
            .map(|e| self.eval(e))
            .collect();
        GradedOneForm::new(self.space.clone(), basis, values, self.weight)
    }

    /// Tabulated equality, converting bases when they differ.
    pub fn same_as(&self, other: &GradedOneForm) -> bool {
        self.values == other.to_basis(self.basis).values
    }

    /// Slots where the two forms differ, after basis conversion.
    pub fn differences(&self, other: &GradedOneForm) -> Vec<(usize, Form)> {
        let o = other.to_basis(self.basis);
        self.values
            .iter()
            .zip(&o.values)
            .enumerate()
            .filter(|(_, (a, b))| a != b)
            .map(|(i, (a, b))| (i, a - b))
            .collect()
    }

    pub fn scale_int(&self, k: i64) -> GradedOneForm {
        GradedOneForm::new(
            self.space.clone(),
            self.basis,
            self.values.iter().map(|v| v.scale_int(k)).collect(),
            self.weight,
        )
    }

    /// Graded exterior derivative:
    /// `⟨E₁,E₂;d^Gλ⟩ = E₁⟨E₂;λ⟩ − (−1)^{|E₁||E₂|}E₂⟨E₁;λ⟩ − ⟨[E₁,E₂];λ⟩`.
    pub fn d(&self) -> GradedTwoForm {
        let basis = self.space.basis(self.basis);
        let comms = basis.commutators();
        let m = basis.len();
        let mut table = vec![vec![Form::zero(self.space.dim()); m]; m];
        for a in 0..m {
            for b in 0..m {
                let ea = &basis.derivations[a];
                let eb = &basis.derivations[b];
                let mut v = ea.apply(&self.values[b]);
                let second = eb.apply(&self.values[a]);
                if parity_sign((basis.degrees[a] * basis.degrees[b]) as i64) {
                    v = v + second;
                } else {
                    v = v - second;
                }
                v = v - self.eval(&comms[a][b]);
                table[a][b] = v;
            }
        }
        GradedTwoForm::new(self.space.clone(), self.basis, table, self.weight)
    }

    /// `L^G_D λ = ι_D d^Gλ + d^G ι_D λ`.
    pub fn lie_derivative(&self, d: &Derivation) -> GradedOneForm {
        let first = self.d().iota(d);
        let second = GradedOneForm::exact(self.space.clone(), self.basis, &self.eval(d));
        first.add(&second)
    }

    pub fn add(&self, other: &GradedOneForm) -> GradedOneForm {
        let o = other.to_basis(self.basis);
        GradedOneForm::new(
            self.space.clone(),
            self.basis,
            self.values.iter().zip(&o.values).map(|(a, b)| a + b).collect(),
            self.weight,
        )
    }

    pub fn sub(&self, other: &GradedOneForm) -> GradedOneForm {
        self.add(&other.scale_int(-1))
    }

    pub fn slot_label(&self, slot: usize) -> String {
        slot_label(&self.space, self.basis, slot)
    }
}

pub(crate) fn slot_label(space: &GradedSpace, basis: Basis, slot: usize) -> String {
    let n = space.dim();
    let coords = space.chart().coords();
    if slot < n {
        format!("{}_{}", basis.label(), coords[slot])
    } else {
        format!("i_{}", coords[slot - n])
    }
}

/// A graded 2-form of bidegree `(2, weight)`.
#[derive(Clone, Debug)]
pub struct GradedTwoForm {
    space: Arc<GradedSpace>,
    basis: Basis,
    table: Vec<Vec<Form>>,
    weight: i64,
}

impl GradedTwoForm {
    pub fn new(space: Arc<GradedSpace>, basis: Basis, table: Vec<Vec<Form>>, weight: i64) -> Self {
        let m = 2 * space.dim();
        assert!(table.len() == m && table.iter().all(|r| r.len() == m), "table must be 2n×2n");
        GradedTwoForm {
            space,
            basis,
            table,
            weight,
        }
    }

    pub fn space(&self) -> &Arc<GradedSpace> {
        &self.space
    }

    pub fn basis(&self) -> Basis {
        self.basis
    }

    pub fn weight(&self) -> i64 {
        self.weight
    }

    pub fn table(&self) -> &Vec<Vec<Form>> {
        &self.table
    }

    pub fn entry(&self, a: usize, b: usize) -> &Form {
        &self.table[a][b]
    }

    /// Evaluation on two coefficiented derivations.
    pub fn eval(&self, d1: &Derivation, d2: &Derivation) -> Form {
        let c1 = self.space.decompose(d1, self.basis);
        let c2 = self.space.decompose(d2, self.basis);
        self.eval_coefficients(&c1, &c2)
    }

    pub(crate) fn eval_coefficients(&self, c1: &[Form], c2: &[Form]) -> Form {
        let degrees = &self.space.basis(self.basis).degrees;
        let mut out = Form::zero(self.space.dim());
        for (a, u) in c1.iter().enumerate() {
            if u.is_zero() {
                continue;
            }
            for (b, w) in c2.iter().enumerate() {
                if w.is_zero() || self.table[a][b].is_zero() {
                    continue;
                }
                let w = w.twist(degrees[a] as i64);
                out = out + u.wedge(&w).wedge(&self.table[a][b]);
            }
        }
        out
    }

    /// `ι_DΘ`, inserting into the last slot: `⟨E;ι_DΘ⟩ = ⟨E,D;Θ⟩`.
    pub fn iota(&self, d: &Derivation) -> GradedOneForm {
        let m = 2 * self.space.dim();
        let cd = self.space.decompose(d, self.basis);
        let values = (0..m)
            .map(|a| {
                let mut unit = vec![Form::zero(self.space.dim()); m];
                unit[a] = Form::constant(self.space.dim(), 1);
                self.eval_coefficients(&unit, &cd)
            })
            .collect();
        let weight = self.weight + d.degree().unwrap_or(0) as i64;
        GradedOneForm::new(self.space.clone(), self.basis, values, weight)
    }

    /// The same form tabulated on another basis.
    pub fn to_basis(&self, basis: Basis) -> GradedTwoForm {
        if basis == self.basis {
            return self.clone();
        }
        let target = &self.space.basis(basis).derivations;
        let coeffs: Vec<Vec<Form>> = target
            .iter()
            .map(|e| self.space.decompose(e, self.basis))
            .collect();
        let table = coeffs
            .iter()
            .map(|ca| coeffs.iter().map(|cb| self.eval_coefficients(ca, cb)).collect())
            .collect();
        GradedTwoForm::new(self.space.clone(), basis, table, self.weight)
    }

    pub fn same_as(&self, other: &GradedTwoForm) -> bool {
        self.table == other.to_basis(self.basis).table
    }

    /// Basis pairs where the two forms differ, with the difference.
    pub fn differences(&self, other: &GradedTwoForm) -> Vec<(usize, usize, Form)> {
        let o = other.to_basis(self.basis);
        let mut out = Vec::new();
        for (a, (ra, rb)) in self.table.iter().zip(&o.table).enumerate() {
            for (b, (x, y)) in ra.iter().zip(rb).enumerate() {
                if x != y {
                    out.push((a, b, x - y));
                }
            }
        }
        out
    }

    pub fn add(&self, other: &GradedTwoForm) -> GradedTwoForm {
        let o = other.to_basis(self.basis);
        let table = self
            .table
            .iter()
            .zip(&o.table)
            .map(|(ra, rb)| ra.iter().zip(rb).map(|(x, y)| x + y).collect())
            .collect();
        GradedTwoForm::new(self.space.clone(), self.basis, table, self.weight)
    }

    /// Multiplies every entry by the rational number `num/den`.
    pub fn scale_ratio(&self, num: i64, den: i64) -> GradedTwoForm {
        let c = crate::scalar::RationalFunction::from_ratio(num, den);
        let table = self
            .table
            .iter()
            .map(|r| r.iter().map(|x| x.scale(&c)).collect())
            .collect();
        GradedTwoForm::new(self.space.clone(), self.basis, table, self.weight)
    }

    /// Matrix of the 0-degree terms of the entries.
    pub fn degree_zero_block(&self) -> Matrix {
        self.table
            .iter()
            .map(|r| r.iter().map(Form::function_part).collect())
            .collect()
    }

    /// Graded antisymmetry `⟨E_B,E_A⟩ = −(−1)^{|E_A||E_B|}⟨E_A,E_B⟩` on the table.
    pub fn is_graded_antisymmetric(&self) -> bool {
        let degrees = &self.space.basis(self.basis).degrees;
        let m = degrees.len();
        (0..m).all(|a| {
            (0..m).all(|b| {
                let t = &self.table[a][b];
                let expected = if parity_sign((degrees[a] * degrees[b]) as i64) {
                    t.clone()
                } else {
                    -t
                };
                self.table[b][a] == expected
            })
        })
    }

    fn homogeneous_pieces(d: &Derivation) -> Vec<(i64, Derivation)> {
        d.degrees()
            .into_iter()
            .map(|k| (k as i64, d.component(k)))
            .collect()
    }

    /// Three-argument graded exterior derivative `⟨D₁,D₂,D₃;d^GΘ⟩`:
    /// `D₁⟨D₂,D₃⟩ − (−1)^{d₁d₂}D₂⟨D₁,D₃⟩ + (−1)^{d₃(d₁+d₂)}D₃⟨D₁,D₂⟩
    ///  − ⟨[D₁,D₂],D₃⟩ + (−1)^{d₂d₃}⟨[D₁,D₃],D₂⟩ − (−1)^{d₁(d₂+d₃)}⟨[D₂,D₃],D₁⟩`.
    pub fn d3(&self, d1: &Derivation, d2: &Derivation, d3: &Derivation) -> Form {
        let mut out = Form::zero(self.space.dim());
        for (k1, e1) in Self::homogeneous_pieces(d1) {
            for (k2, e2) in Self::homogeneous_pieces(d2) {
                for (k3, e3) in Self::homogeneous_pieces(d3) {
                    out = out + self.d3_homogeneous(&e1, k1, &e2, k2, &e3, k3);
                }
            }
        }
        out
    }

    fn d3_homogeneous(&self, d1: &Derivation, k1: i64, d2: &Derivation, k2: i64, d3: &Derivation, k3: i64) -> Form {
        let signed = |f: Form, e: i64| if parity_sign(e) { -f } else { f };
        let mut out = d1.apply(&self.eval(d2, d3));
        out = out - signed(d2.apply(&self.eval(d1, d3)), k1 * k2);
        out = out + signed(d3.apply(&self.eval(d1, d2)), k3 * (k1 + k2));
        out = out - self.eval(&d1.commutator(d2), d3);
        out = out + signed(self.eval(&d1.commutator(d3), d2), k2 * k3);
        out = out - signed(self.eval(&d2.commutator(d3), d1), k1 * (k2 + k3));
        out
    }

    /// Basis triples on which `d^GΘ` does not vanish.
    pub fn closedness_defects(&self) -> Vec<(usize, usize, usize, Form)> {
        let basis = self.space.basis(self.basis);
        let m = basis.len();
        let mut out = Vec::new();
        for a in 0..m {
            for b in a..m {
                for c in b..m {
                    let v = self.d3(&basis.derivations[a], &basis.derivations[b], &basis.derivations[c]);
                    if !v.is_zero() {
                        out.push((a, b, c, v));
                    }
                }
            }
        }
        out
    }

    /// `L^G_DΘ = ι_D d^GΘ + d^G ι_DΘ`.
    pub fn lie_derivative(&self, d: &Derivation) -> GradedTwoForm {
        let basis = self.space.basis(self.basis);
        let m = basis.len();
        let second = self.iota(d).d();
        let table = (0..m)
            .map(|a| {
                (0..m)
                    .map(|b| {
                        let first = self.d3(&basis.derivations[a], &basis.derivations[b], d);
                        first + second.entry(a, b)
                    })
                    .collect()
            })
            .collect();
        GradedTwoForm::new(self.space.clone(), self.basis, table, self.weight + d.degree().unwrap_or(0) as i64)
    }

    pub fn slot_label(&self, slot: usize) -> String {
        slot_label(&self.space, self.basis, slot)
    }
}
