//! The failure of `d` to be a derivation of the even bracket, measured by
//! the Koszul–Schouten form.

use super::cache::Hamiltonians;
use super::solver::inverse_apply;
use crate::error::Result;
use crate::exterior::{Derivation, Form};
use crate::graded::GradedTwoForm;

/// Two sides of an identity between forms.
#[derive(Clone, Debug)]
pub struct DefectSides {
    pub left: Form,
    pub right: Form,
}

impl DefectSides {
    pub fn holds(&self) -> bool {
        self.left == self.right
    }

    pub fn difference(&self) -> Form {
        &self.left - &self.right
    }
}

/// Where the sign in front of the Koszul–Schouten term comes from.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum DefectSigns {
    /// `d[[α,β]] − [[dα,β]] − [[α,dβ]] = ⟨D_α,D_β;Θ_KS⟩` and
    /// `D_{dα} = [d,D_α] + (−1)^{|α|}Θ^{-1}(ι_{D_α}Θ_KS)`, exactly as displayed.
    Displayed,
    /// The signs forced by last-slot insertion, where
    /// `ι_{[D,E]} = L_Dι_E − (−1)^{|D|(|E|−1)}ι_E L_D`:
    /// `d[[α,β]] − [[dα,β]] − (−1)^{|α|}[[α,dβ]] = (−1)^{|α|+|β|}⟨D_α,D_β;Θ_KS⟩` and
    /// `D_{dα} = [d,D_α] − (−1)^{|α|}Θ^{-1}(ι_{D_α}Θ_KS)`.
    TotalDegree,
}

fn signed(f: Form, odd: bool) -> Form {
    if odd {
        -f
    } else {
        f
    }
}

/// Both sides of the bracket-defect identity for the even bracket of `theta`.
pub fn d_defect(
    theta: &Hamiltonians,
    theta_ks: &GradedTwoForm,
    alpha: &Form,
    beta: &Form,
    signs: DefectSigns,
) -> Result<DefectSides> {
    let n = alpha.dim();
    let mut left = Form::zero(n);
    let mut right = Form::zero(n);
    for (p, a) in alpha.parts() {
        let da = theta.derivation(&a)?;
        let dda = theta.derivation(&a.d())?;
        for (q, b) in beta.parts() {
            let db = theta.derivation(&b)?;
            let ks = theta_ks.eval(&da, &db);
            let cross = da.apply(&b.d());
            left = left + da.apply(&b).d() - dda.apply(&b);
            match signs {
                DefectSigns::Displayed => {
                    left = left - cross;
                    right = right + ks;
                }
                DefectSigns::TotalDegree => {
                    left = left - signed(cross, p % 2 == 1);
                    right = right + signed(ks, (p + q) % 2 == 1);
                }
            }
        }
    }
    Ok(DefectSides { left, right })
}

/// Both sides of `D_{dα} = [d,D_α] ± Θ^{-1}(ι_{D_α}Θ_KS)`.
pub fn d_defect_vector_fields(
    theta: &Hamiltonians,
    theta_ks: &GradedTwoForm,
    alpha: &Form,
    signs: DefectSigns,
) -> Result<(Derivation, Derivation)> {
    let n = alpha.dim();
    let left = theta.derivation(&alpha.d())?;
    let mut right = Derivation::zero(n);
    for (p, a) in alpha.parts() {
        let da = theta.derivation(&a)?;
        let comm = Derivation::exterior_derivative(n).commutator(&da);
        let correction = inverse_apply(theta.theta(), &theta_ks.iota(&da).to_basis(theta.theta().basis()))?;
        let minus = match signs {
            DefectSigns::Displayed => p % 2 == 1,
            DefectSigns::TotalDegree => p % 2 == 0,
        };
        right = &right + &comm;
        right = if minus { &right - &correction } else { &right + &correction };
    }
    Ok((left, right))
}

/// `d[[α,β]]`, `[[dα,β]]` and `[[α,dβ]]` for reporting.
pub fn defect_terms(theta: &Hamiltonians, alpha: &Form, beta: &Form) -> Result<[Form; 3]> {
    Ok([
        theta.bracket(alpha, beta)?.d(),
        theta.bracket(&alpha.d(), beta)?,
        theta.bracket(alpha, &beta.d())?,
    ])
}
