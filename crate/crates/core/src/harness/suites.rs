//! The verification suites: every identity is evaluated exactly on a seeded
//! corpus and recorded as one check.

use std::sync::Arc;

use rayon::prelude::*;

use super::corpus::{l_samples, l_with_two_form, Corpus};
use super::report::{CheckRecord, Report};
use crate::error::{Error, Result};
use crate::exterior::{Derivation, Form};
use crate::geometry::{canonical_almost_product, library, linalg, ChartGeometry, LTensor};
use crate::graded::{
    lambda_g, lambda_omega, nondegeneracy, theta, theta_closed_lie, theta_closed_nabla, theta_ks, Basis, GradedSpace,
    GradedTwoForm, ThetaVariant,
};
use crate::hamiltonian::{
    assemble_d_df, bracket_fastpath, d_defect, d_defect_vector_fields, fastpath_arguments, insert_bivector, k_even,
    k_odd, ks_bracket_generator, DefectSigns, FastpathKind, Hamiltonians, OddRecursionSign,
};
use crate::scalar::RationalFunction;

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Suite {
    Axioms,
    Theorems,
    Recursion,
    Kahler,
    Paracomplex,
    All,
}

impl Suite {
    pub const NAMES: [&'static str; 6] = ["axioms", "theorems", "recursion", "kahler", "paracomplex", "all"];

    pub fn parse(s: &str) -> Result<Suite> {
        Ok(match s {
            "axioms" => Suite::Axioms,
            "theorems" => Suite::Theorems,
            "recursion" => Suite::Recursion,
            "kahler" => Suite::Kahler,
            "paracomplex" => Suite::Paracomplex,
            "all" => Suite::All,
            other => {
                return Err(Error::Usage(format!(
                    "unknown suite '{other}' (expected one of {})",
                    Suite::NAMES.join(", ")
                )))
            }
        })
    }

    pub fn name(self) -> &'static str {
        match self {
            Suite::Axioms => "axioms",
            Suite::Theorems => "theorems",
            Suite::Recursion => "recursion",
            Suite::Kahler => "kahler",
            Suite::Paracomplex => "paracomplex",
            Suite::All => "all",
        }
    }

    fn members(self) -> Vec<Suite> {
        match self {
            Suite::All => vec![
                Suite::Axioms,
                Suite::Theorems,
                Suite::Recursion,
                Suite::Kahler,
                Suite::Paracomplex,
            ],
            s => vec![s],
        }
    }
}

/// Everything the checks share: the chart, its corpus and memoized solvers
/// for the even form `Θ_{ω,g}` and the Koszul–Schouten form.
pub struct Context {
    pub chart: ChartGeometry,
    pub space: Arc<GradedSpace>,
    pub corpus: Corpus,
    pub theta: GradedTwoForm,
    pub theta_ks: GradedTwoForm,
    pub even: Hamiltonians,
    pub ks: Hamiltonians,
}

impl Context {
    pub fn new(chart: &ChartGeometry, seed: u64, samples: usize, max_form_degree: usize) -> Result<Context> {
        let space = GradedSpace::new(chart.clone());
        let theta = theta(&space, ThetaVariant::OmegaG)?;
        let theta_ks = theta_ks(&space);
        Ok(Context {
            chart: chart.clone(),
            corpus: Corpus::generate(chart, seed, samples, max_form_degree),
            even: Hamiltonians::new(&theta),
            ks: Hamiltonians::new(&theta_ks),
            space,
            theta,
            theta_ks,
        })
    }

    fn show(&self, f: &Form) -> String {
        self.chart.display(f)
    }

    fn function(&self, f: &RationalFunction) -> Form {
        self.chart.function(f.clone())
    }

    /// Functions followed by the 1-forms of the corpus.
    fn low_degree(&self) -> Vec<Form> {
        let mut out: Vec<Form> = self.corpus.functions.iter().map(|f| self.function(f)).collect();
        out.extend(self.corpus.one_forms().into_iter().cloned());
        out
    }

    fn elements(&self) -> Vec<Form> {
        self.corpus.all_forms(&self.chart)
    }

    /// `J² = −1` and `∇J = 0`.
    fn kahler(&self) -> bool {
        j_squared_is(&self.chart, -1) && self.chart.is_kahler()
    }
}

fn j_squared_is(chart: &ChartGeometry, s: i64) -> bool {
    let j = chart.j_matrix();
    let n = chart.dim();
    let sq = linalg::mul(j, j);
    (0..n).all(|a| {
        (0..n).all(|b| {
            let expect = if a == b { RationalFunction::from_int(s) } else { RationalFunction::zero() };
            sq[a][b] == expect
        })
    })
}

fn sign(e: i64) -> i64 {
    if e.rem_euclid(2) == 0 {
        1
    } else {
        -1
    }
}

fn degree(f: &Form) -> i64 {
    f.degree().unwrap_or(0) as i64
}

/// Runs a check body, turning a computation error into a failed record.
fn guarded(id: &str, anchor: &str, body: impl FnOnce(&mut CheckRecord) -> Result<()>) -> CheckRecord {
    let mut rec = CheckRecord::new(id, anchor);
    if let Err(e) = body(&mut rec) {
        rec.fail(format!("computation error: {e}"));
    }
    rec
}

fn equality(ctx: &Context, rec: &mut CheckRecord, left: &Form, right: &Form, label: impl FnOnce() -> String) {
    rec.record(left == right, || format!("{}: {}", label(), ctx.show(&(left - right))));
}

type Check<'a> = Box<dyn Fn(&Context) -> CheckRecord + Send + Sync + 'a>;

/// Which bracket an axiom check runs on.
#[derive(Clone, Copy)]
enum Bracket {
    Even,
    Ks,
}

impl Bracket {
    fn name(self) -> &'static str {
        match self {
            Bracket::Even => "even",
            Bracket::Ks => "ks",
        }
    }

    fn k(self) -> i64 {
        match self {
            Bracket::Even => 0,
            Bracket::Ks => -1,
        }
    }

    fn solver(self, ctx: &Context) -> &Hamiltonians {
        match self {
            Bracket::Even => &ctx.even,
            Bracket::Ks => &ctx.ks,
        }
    }

    fn apply(self, ctx: &Context, a: &Form, b: &Form) -> Result<Form> {
        self.solver(ctx).bracket(a, b)
    }
}

/// Deterministic triples mixing functions and forms.
fn triples(elems: &[Form]) -> Vec<(Form, Form, Form)> {
    let m = elems.len();
    (0..m)
        .map(|i| (elems[i].clone(), elems[(i + 1) % m].clone(), elems[(i + m / 2 + 1) % m].clone()))
        .collect()
}

fn axiom_checks<'a>(bracket: Bracket) -> Vec<Check<'a>> {
    let b = bracket;
    let id = move |s: &str| format!("axioms.{}.{s}", b.name());
    vec![
        Box::new(move |ctx: &Context| {
            guarded(&id("bilinearity"), "graded Poisson axiom: R-bilinearity", |rec| {
                let c = Form::function(ctx.chart.dim(), RationalFunction::from_ratio(-3, 2));
                for (x, y, z) in triples(&ctx.elems_low()) {
                    let comb = &x + &c.wedge(&y);
                    let left = b.apply(ctx, &comb, &z)?;
                    let right = b.apply(ctx, &x, &z)? + c.wedge(&b.apply(ctx, &y, &z)?);
                    equality(ctx, rec, &left, &right, || format!("first slot at ({}, {}, {})", ctx.show(&x), ctx.show(&y), ctx.show(&z)));
                    let left = b.apply(ctx, &z, &comb)?;
                    let right = b.apply(ctx, &z, &x)? + c.wedge(&b.apply(ctx, &z, &y)?);
                    equality(ctx, rec, &left, &right, || format!("second slot at ({}, {}, {})", ctx.show(&z), ctx.show(&x), ctx.show(&y)));
                }
                Ok(())
            })
        }),
        Box::new(move |ctx: &Context| {
            let (anchor, note) = match b {
                Bracket::Even => (
                    "graded Poisson axiom: degree of the bracket",
                    "the even form mixes form degrees 0 and 2, so degrees add modulo 2",
                ),
                Bracket::Ks => ("graded Poisson axiom: degree of the bracket", "degrees add exactly, shifted by -1"),
            };
            guarded(&id("degree"), anchor, |rec| {
                let elems = ctx.elems_all();
                for x in &elems {
                    for y in &elems {
                        let r = b.apply(ctx, x, y)?;
                        let target = degree(x) + degree(y) + b.k();
                        let ok = r.parts().keys().all(|&p| match b {
                            Bracket::Even => (p as i64 - target).rem_euclid(2) == 0,
                            Bracket::Ks => p as i64 == target,
                        });
                        rec.record(ok, || {
                            format!("[[{}, {}]] = {} (expected degree {target})", ctx.show(x), ctx.show(y), ctx.show(&r))
                        });
                    }
                }
                Ok(())
            })
            .with_note(note)
        }),
        Box::new(move |ctx: &Context| {
            guarded(&id("graded-commutativity"), "graded Poisson axiom: graded commutativity", |rec| {
                let elems = ctx.elems_all();
                for x in &elems {
                    for y in &elems {
                        let s = -sign((degree(x) + b.k()) * (degree(y) + b.k()));
                        let left = b.apply(ctx, x, y)?;
                        let right = b.apply(ctx, y, x)?.scale_int(s);
                        equality(ctx, rec, &left, &right, || format!("at ({}, {})", ctx.show(x), ctx.show(y)));
                    }
                }
                Ok(())
            })
        }),
        Box::new(move |ctx: &Context| {
            guarded(&id("leibniz"), "graded Poisson axiom: graded Leibniz rule", |rec| {
                for (x, y, z) in triples(&ctx.elems_all()) {
                    let left = b.apply(ctx, &x, &y.wedge(&z))?;
                    let s = sign((degree(&x) + b.k()) * degree(&y));
                    let right = b.apply(ctx, &x, &y)?.wedge(&z) + y.wedge(&b.apply(ctx, &x, &z)?).scale_int(s);
                    equality(ctx, rec, &left, &right, || format!("at ({}, {}, {})", ctx.show(&x), ctx.show(&y), ctx.show(&z)));
                }
                Ok(())
            })
        }),
        Box::new(move |ctx: &Context| {
            guarded(&id("jacobi"), "graded Poisson axiom: graded Jacobi identity", |rec| {
                for (x, y, z) in triples(&ctx.elems_all()) {
                    let left = b.apply(ctx, &x, &b.apply(ctx, &y, &z)?)?;
                    let s = sign((degree(&x) + b.k()) * (degree(&y) + b.k()));
                    let xy = b.apply(ctx, &x, &y)?;
                    let right = b.apply(ctx, &xy, &z)? + b.apply(ctx, &y, &b.apply(ctx, &x, &z)?)?.scale_int(s);
                    equality(ctx, rec, &left, &right, || format!("at ({}, {}, {})", ctx.show(&x), ctx.show(&y), ctx.show(&z)));
                }
                Ok(())
            })
        }),
    ]
}

impl Context {
    fn elems_low(&self) -> Vec<Form> {
        self.low_degree()
    }

    fn elems_all(&self) -> Vec<Form> {
        self.elements()
    }
}

fn axioms<'a>() -> Vec<Check<'a>> {
    let mut out = axiom_checks(Bracket::Even);
    out.push(Box::new(|ctx: &Context| {
        guarded("axioms.even.extension", "the degree-0 term of the bracket of functions is the Poisson bracket", |rec| {
            for f in &ctx.corpus.functions {
                for h in &ctx.corpus.functions {
                    let r = ctx.even.bracket(&ctx.function(f), &ctx.function(h))?;
                    let pb = ctx.chart.poisson_bracket(f, h);
                    let n = ctx.chart.dim();
                    let left = Form::function(n, r.function_part());
                    equality(ctx, rec, &left, &Form::function(n, pb), || {
                        format!("at ({}, {})", ctx.show(&ctx.function(f)), ctx.show(&ctx.function(h)))
                    });
                }
            }
            Ok(())
        })
    }));
    out.extend(axiom_checks(Bracket::Ks));
    out.push(Box::new(|ctx: &Context| {
        guarded(
            "axioms.ks.d-derivation-unsigned",
            "d is a derivation of the Koszul-Schouten bracket, with all signs positive as displayed",
            |rec| {
                for x in ctx.elems_low() {
                    for y in ctx.elems_low() {
                        let left = ctx.ks.bracket(&x, &y)?.d();
                        let right = ctx.ks.bracket(&x.d(), &y)? + ctx.ks.bracket(&x, &y.d())?;
                        equality(ctx, rec, &left, &right, || format!("at ({}, {})", ctx.show(&x), ctx.show(&y)));
                    }
                }
                Ok(())
            },
        )
        .informational("a degree-1 derivation of a bracket of degree -1 picks up (-1)^(|a|-1) on the second term")
    }));
    out.push(Box::new(|ctx: &Context| {
        guarded(
            "axioms.ks.d-derivation",
            "d is a derivation of the Koszul-Schouten bracket, with the Koszul sign of the shifted degree",
            |rec| {
                for x in ctx.elems_low() {
                    for y in ctx.elems_low() {
                        let left = ctx.ks.bracket(&x, &y)?.d();
                        let s = sign(degree(&x) - 1);
                        let right = ctx.ks.bracket(&x.d(), &y)? + ctx.ks.bracket(&x, &y.d())?.scale_int(s);
                        equality(ctx, rec, &left, &right, || format!("at ({}, {})", ctx.show(&x), ctx.show(&y)));
                    }
                }
                Ok(())
            },
        )
    }));
    out.push(Box::new(|ctx: &Context| {
        guarded(
            "ks.cross-oracle",
            "Koszul-Schouten bracket: Hamiltonian route against the derived bracket of the Koszul operator",
            |rec| {
                let elems = ctx.elems_all();
                for x in &elems {
                    for y in &elems {
                        let left = ctx.ks.bracket(x, y)?;
                        let right = ks_bracket_generator(&ctx.chart, x, y);
                        equality(ctx, rec, &left, &right, || format!("at ({}, {})", ctx.show(x), ctx.show(y)));
                    }
                }
                Ok(())
            },
        )
        .with_note(format!(
            "calibration sign {} (fixed on [[dx, y]] = -1 in the flat plane)",
            crate::hamiltonian::KS_GENERATOR_SIGN
        ))
    }));
    out.push(Box::new(|ctx: &Context| {
        guarded(
            "ks.differential-identity",
            "Koszul-Schouten bracket of exact 1-forms: [[df, dh]] = d{f, h}",
            |rec| {
                for (f, h) in consecutive(&ctx.corpus.functions) {
                    let left = ctx.ks.bracket(&ctx.function(f).d(), &ctx.function(h).d())?;
                    let right = ctx.function(&ctx.chart.poisson_bracket(f, h)).d();
                    equality(ctx, rec, &left, &right, || {
                        format!("at (f, h) = ({}, {})", ctx.show(&ctx.function(f)), ctx.show(&ctx.function(h)))
                    });
                }
                Ok(())
            },
        )
    }));
    out.push(Box::new(|ctx: &Context| {
        guarded(
            "ks.differential-bivector",
            "Koszul-Schouten bracket of exact 1-forms against d of the Poisson bivector pairing",
            |rec| {
                for (f, h) in consecutive(&ctx.corpus.functions) {
                    let (df, dh) = (ctx.function(f).d(), ctx.function(h).d());
                    let left = ctx.ks.bracket(&df, &dh)?;
                    let right = insert_bivector(&ctx.chart, &df.wedge(&dh)).d();
                    equality(ctx, rec, &left, &right, || format!("at ({}, {})", ctx.show(&df), ctx.show(&dh)));
                }
                Ok(())
            },
        )
        .with_note("the bivector is the inverse of the symplectic matrix")
    }));
    out
}

fn consecutive<T>(v: &[T]) -> Vec<(&T, &T)> {
    (0..v.len()).map(|i| (&v[i], &v[(i + 1) % v.len()])).collect()
}

fn differences_witness2(ctx: &Context, d: &[(usize, usize, Form)], t: &GradedTwoForm) -> String {
    let (a, b, f) = &d[0];
    format!("<{}, {}> differs by {}", t.slot_label(*a), t.slot_label(*b), ctx.show(f))
}

fn derivation_witness(ctx: &Context, left: &Derivation, right: &Derivation) -> String {
    (left - right).display_with(ctx.chart.coords())
}

/// The `L` tensors the characterization and locally-Hamiltonian checks use:
/// the chart's own tensor if it has one, then generated samples.
fn l_tensors(chart: &ChartGeometry) -> Vec<(String, LTensor)> {
    let mut out = Vec::new();
    if let Some(l) = chart.l_tensor() {
        out.push(("chart L".to_string(), l.clone()));
    }
    for (i, l) in l_samples(chart).into_iter().enumerate() {
        out.push((format!("sample L{}", i + 1), l));
    }
    if chart.dim() == 4 {
        let n = 4;
        let w = |i: usize, j: usize| Form::monomial(n, &[i, j], RationalFunction::one());
        for (label, beta) in [
            ("dx^dy", w(0, 1)),
            ("dx^dz + dy^dw", &w(0, 2) + &w(1, 3)),
            ("dx^dz", w(0, 2)),
        ] {
            out.push((format!("dx (x) {label}"), l_with_two_form(chart, 0, &beta)));
        }
    }
    out
}

/// `L(X; JY, Z) = −L(X; Y, JZ)` on coordinate fields.
fn l_compatible(chart: &ChartGeometry) -> bool {
    let n = chart.dim();
    let e: Vec<_> = (0..n).map(|a| chart.coordinate_field(a)).collect();
    (0..n).all(|a| {
        (0..n).all(|b| {
            (0..n).all(|c| {
                let lhs = chart.l_on(&e[a], &chart.apply_j(&e[b]), &e[c]);
                let rhs = chart.l_on(&e[a], &e[b], &chart.apply_j(&e[c]));
                lhs == -rhs
            })
        })
    })
}

/// `L^G_{i_J}Θ_{ω,g,L}`, as the list of nonzero entries.
fn i_j_lie_defects(chart: &ChartGeometry) -> Result<(GradedTwoForm, Vec<(usize, usize, Form)>)> {
    let space = GradedSpace::new(chart.clone());
    let variant = if chart.l_tensor().is_some() { ThetaVariant::OmegaGL } else { ThetaVariant::OmegaG };
    let th = theta(&space, variant)?;
    let lie = th.lie_derivative(&Derivation::insertion_of(chart.j_tensor()));
    let zero = th.scale_ratio(0, 1);
    let diffs = lie.differences(&zero);
    Ok((lie, diffs))
}

fn theorems<'a>() -> Vec<Check<'a>> {
    let mut out: Vec<Check<'a>> = vec![
        Box::new(|ctx: &Context| {
            guarded("theorem.iota-d", "contraction of the even form with d is the odd exact form", |rec| {
                let n = ctx.chart.dim();
                let lhs = ctx.theta.iota(&Derivation::exterior_derivative(n));
                let rhs = lambda_omega(&ctx.space);
                for (slot, f) in lhs.differences(&rhs) {
                    rec.fail(format!("on {}: {}", lhs.slot_label(slot), ctx.show(&f)));
                }
                rec.cases = 2 * n;
                Ok(())
            })
        }),
        Box::new(|ctx: &Context| {
            guarded(
                "theorem.lie-d",
                "graded Lie derivative of the even form along d is the Koszul-Schouten form",
                |rec| {
                    let n = ctx.chart.dim();
                    let lhs = ctx.theta.lie_derivative(&Derivation::exterior_derivative(n));
                    let d = lhs.differences(&ctx.theta_ks);
                    if !d.is_empty() {
                        rec.fail(differences_witness2(ctx, &d, &lhs));
                    }
                    rec.cases = 4 * n * n;
                    Ok(())
                },
            )
        }),
        Box::new(|ctx: &Context| {
            guarded("lemma.d-lambda-g", "d annihilates the metric graded 1-form", |rec| {
                let n = ctx.chart.dim();
                let v = lambda_g(&ctx.space, false)?.eval(&Derivation::exterior_derivative(n));
                equality(ctx, rec, &v, &Form::zero(n), || "<d; lambda_g>".into());
                Ok(())
            })
        }),
        Box::new(|ctx: &Context| {
            let mut notes = Vec::new();
            let rec = guarded(
                "characterization.l-vanishes",
                "contraction with d gives the odd exact form exactly when L vanishes",
                |rec| {
                    let base = ctx.chart.without_l_tensor();
                    let n = base.dim();
                    let lam = lambda_omega(&GradedSpace::new(base.clone()));
                    let zero_space = GradedSpace::new(base.clone());
                    let th0 = theta(&zero_space, ThetaVariant::OmegaG)?;
                    let diffs = th0.iota(&Derivation::exterior_derivative(n)).differences(&lam);
                    rec.record(diffs.is_empty(), || "L = 0 does not reproduce the odd exact form".into());
                    for (label, l) in l_tensors(&base) {
                        let chart = base.with_l_tensor(l)?;
                        let space = GradedSpace::new(chart.clone());
                        let th = theta(&space, ThetaVariant::OmegaGL)?;
                        let lhs = th.iota(&Derivation::exterior_derivative(n));
                        let diffs = lhs.differences(&lambda_omega(&space));
                        match diffs.first() {
                            Some((slot, f)) => {
                                notes.push(format!("{label}: witness on {} = {}", lhs.slot_label(*slot), chart.display(f)));
                                rec.record(true, String::new);
                            }
                            None => rec.fail(format!("{label} is nonzero but reproduces the odd exact form")),
                        }
                    }
                    Ok(())
                },
            );
            rec.with_note(notes.join("; "))
        }),
        Box::new(|ctx: &Context| {
            guarded(
                "defect.bracket",
                "failure of d to be a derivation of the even bracket, as displayed",
                |rec| {
                    defect_pairs(ctx, rec, DefectSigns::Displayed)
                },
            )
        }),
        Box::new(|ctx: &Context| {
            guarded(
                "defect.bracket-graded-signs",
                "failure of d to be a derivation of the even bracket, with Koszul signs on total degree",
                |rec| defect_pairs(ctx, rec, DefectSigns::TotalDegree),
            )
            .with_note(
                "d[[a,b]] - [[da,b]] - (-1)^|a| [[a,db]] = (-1)^(|a|+|b|) <D_a, D_b; Theta_KS>",
            )
        }),
        Box::new(|ctx: &Context| {
            guarded(
                "defect.vector-field",
                "Hamiltonian vector field of da against the commutator [d, D_a], as displayed",
                |rec| defect_fields(ctx, rec, DefectSigns::Displayed),
            )
        }),
        Box::new(|ctx: &Context| {
            guarded(
                "defect.vector-field-graded-signs",
                "Hamiltonian vector field of da against the commutator [d, D_a], with Koszul signs on total degree",
                |rec| defect_fields(ctx, rec, DefectSigns::TotalDegree),
            )
            .with_note("D_da = [d, D_a] - (-1)^|a| Theta^-1(iota_{D_a} Theta_KS)")
        }),
        Box::new(|ctx: &Context| {
            guarded(
                "theorem.hamiltonian-of-omega",
                "the Hamiltonian vector field of the symplectic form is insertion of J",
                |rec| {
                    let d = ctx.even.derivation(ctx.chart.omega_form())?;
                    let ij = Derivation::insertion_of(ctx.chart.j_tensor());
                    rec.record(d == ij, || derivation_witness(ctx, &d, &ij));
                    Ok(())
                },
            )
        }),
        Box::new(|ctx: &Context| {
            guarded("theorem.iota-j-lambda-g", "insertion of J into the metric graded 1-form gives twice the symplectic form", |rec| {
                let v = lambda_g(&ctx.space, false)?.eval(&Derivation::insertion_of(ctx.chart.j_tensor()));
                equality(ctx, rec, &v, &ctx.chart.omega_form().scale_int(2), || "<i_J; lambda_g> - 2 omega".into());
                Ok(())
            })
        }),
        Box::new(|ctx: &Context| {
            guarded("lemma.nabla-j-symmetric", "g((nabla_X J)Y, Z) is symmetric in Y and Z", |rec| {
                let ch = &ctx.chart;
                let n = ch.dim();
                for c in 0..n {
                    let m = ch.covariant_j(c);
                    for a in 0..n {
                        for e in 0..n {
                            let val = |a: usize, e: usize| {
                                (0..n).fold(RationalFunction::zero(), |acc, b| acc + &m[b][a] * &ch.metric()[b][e])
                            };
                            let (l, r) = (val(a, e), val(e, a));
                            rec.record(l == r, || {
                                format!(
                                    "X = d/d{}, Y = d/d{}, Z = d/d{}: {}",
                                    ch.coords()[c],
                                    ch.coords()[a],
                                    ch.coords()[e],
                                    ch.display(&Form::function(n, &l - &r))
                                )
                            });
                        }
                    }
                }
                Ok(())
            })
        }),
        Box::new(|ctx: &Context| {
            guarded(
                "locally-hamiltonian",
                "insertion of J is locally Hamiltonian for the even form with the chart's L",
                |rec| {
                    let (lie, diffs) = i_j_lie_defects(&ctx.chart)?;
                    rec.cases = diffs.len().max(1);
                    if !diffs.is_empty() {
                        rec.cases -= 1;
                        rec.fail(differences_witness2(ctx, &diffs, &lie));
                    }
                    Ok(())
                },
            )
            .with_note(if ctx.chart.l_tensor().is_some() { "chart carries an L tensor" } else { "chart carries no L tensor" })
        }),
        Box::new(|ctx: &Context| {
            let mut counts = (0, 0);
            let rec = guarded(
                "locally-hamiltonian.criterion",
                "insertion of J is locally Hamiltonian exactly when L(X; JY, Z) = -L(X; Y, JZ)",
                |rec| {
                    let base = ctx.chart.without_l_tensor();
                    for (label, l) in l_tensors(&base) {
                        let chart = base.with_l_tensor(l)?;
                        let compatible = l_compatible(&chart);
                        let vanishes = i_j_lie_defects(&chart)?.1.is_empty();
                        if compatible {
                            counts.0 += 1;
                        } else {
                            counts.1 += 1;
                        }
                        rec.record(compatible == vanishes, || {
                            format!("{label}: compatibility {compatible}, vanishing Lie derivative {vanishes}")
                        });
                    }
                    Ok(())
                },
            );
            rec.with_note(format!("{} compatible and {} violating samples", counts.0, counts.1))
        }),
        Box::new(|ctx: &Context| {
            guarded(
                "construction.closed-forms",
                "the even form from its definition against the closed form in the {L, i} basis",
                |rec| {
                    let other = theta_closed_lie(&ctx.space);
                    let d = ctx.theta.differences(&other);
                    rec.cases = 1;
                    if !d.is_empty() {
                        rec.fail(differences_witness2(ctx, &d, &ctx.theta));
                    }
                    Ok(())
                },
            )
        }),
        Box::new(|ctx: &Context| {
            guarded(
                "construction.nabla-basis",
                "the even form from its definition against the closed form in the {nabla, i} basis",
                |rec| {
                    let other = theta_closed_nabla(&ctx.space);
                    let d = ctx.theta.differences(&other);
                    rec.cases = 1;
                    if !d.is_empty() {
                        rec.fail(differences_witness2(ctx, &d, &ctx.theta));
                    }
                    Ok(())
                },
            )
        }),
        Box::new(|ctx: &Context| {
            guarded(
                "construction.nondegeneracy",
                "determinant of the degree-0 block equals det(omega) det(g) and is nonzero",
                |rec| {
                    let (l, r) = nondegeneracy(&ctx.theta);
                    let n = ctx.chart.dim();
                    rec.record(l == r && !l.is_zero(), || {
                        format!("{} against {}", ctx.show(&Form::function(n, l.clone())), ctx.show(&Form::function(n, r.clone())))
                    });
                    Ok(())
                },
            )
        }),
    ];
    out.shrink_to_fit();
    out
}

fn defect_pairs(ctx: &Context, rec: &mut CheckRecord, signs: DefectSigns) -> Result<()> {
    let elems = ctx.elems_low();
    for a in &elems {
        for b in &elems {
            let sides = d_defect(&ctx.even, &ctx.theta_ks, a, b, signs)?;
            rec.record(sides.holds(), || {
                format!("at ({}, {}): {}", ctx.show(a), ctx.show(b), ctx.show(&sides.difference()))
            });
        }
    }
    Ok(())
}

fn defect_fields(ctx: &Context, rec: &mut CheckRecord, signs: DefectSigns) -> Result<()> {
    for a in ctx.elems_low() {
        let (l, r) = d_defect_vector_fields(&ctx.even, &ctx.theta_ks, &a, signs)?;
        rec.record(l == r, || format!("at {}: {}", ctx.show(&a), derivation_witness(ctx, &l, &r)));
    }
    Ok(())
}

fn recursion<'a>() -> Vec<Check<'a>> {
    let mut out: Vec<Check<'a>> = vec![
        Box::new(|ctx: &Context| {
            guarded("structure.functions", "solutions for functions only have even-degree nabla terms and no insertions", |rec| {
                for f in &ctx.corpus.functions {
                    let s = ctx.even.solve(&ctx.function(f))?;
                    let ok = s.insertion_components.is_empty() && s.nabla_components.keys().all(|p| p % 2 == 0);
                    rec.record(ok, || {
                        format!("D_f = {} for f = {}", s.derivation.display_with(ctx.chart.coords()), ctx.show(&s.source))
                    });
                }
                Ok(())
            })
        }),
        Box::new(|ctx: &Context| {
            guarded(
                "structure.differentials",
                "solutions for exact 1-forms insert the metric dual and have only odd-degree nabla terms",
                |rec| {
                    for f in &ctx.corpus.functions {
                        let df = ctx.function(f).d();
                        let s = ctx.even.solve(&df)?;
                        let sharp = ctx.chart.sharp(&df)?.to_vvf();
                        let ok = s.insertion_components.len() == 1
                            && s.l(0) == sharp
                            && s.nabla_components.keys().all(|p| p % 2 == 1);
                        rec.record(ok, || format!("D_df = {} for df = {}", s.derivation.display_with(ctx.chart.coords()), ctx.show(&df)));
                    }
                    Ok(())
                },
            )
        }),
        Box::new(|ctx: &Context| {
            guarded("recursion.even", "even components from the curvature recursion against the solver", |rec| {
                for f in &ctx.corpus.functions {
                    let s = ctx.even.solve(&ctx.function(f))?;
                    for (i, k) in k_even(&ctx.chart, f).iter().enumerate() {
                        let p = 2 * i;
                        let solver = s.k(p);
                        rec.record(*k == solver, || {
                            format!(
                                "K^{p} for f = {}: recursion {} solver {}",
                                ctx.show(&s.source),
                                k.display_with(ctx.chart.coords()),
                                solver.display_with(ctx.chart.coords())
                            )
                        });
                    }
                }
                Ok(())
            })
        }),
        Box::new(|ctx: &Context| {
            let mut outcome = Vec::new();
            let rec = guarded(
                "recursion.odd",
                "odd components from the recursion assemble a Hamiltonian vector field of df",
                |rec| {
                    let mut realized = false;
                    let (mut displayed_ok, mut minus_ok) = (true, true);
                    for f in &ctx.corpus.functions {
                        let s = ctx.even.solve(&ctx.function(f).d())?;
                        let displayed = assemble_d_df(&ctx.chart, f, OddRecursionSign::AsDisplayed);
                        let minus = assemble_d_df(&ctx.chart, f, OddRecursionSign::Minus);
                        realized |= k_odd(&ctx.chart, f, OddRecursionSign::Minus).iter().skip(2).any(|k| !k.is_zero());
                        displayed_ok &= displayed == s.derivation;
                        minus_ok &= minus == s.derivation;
                        let lhs = ctx.theta.iota(&displayed);
                        let rhs = crate::graded::GradedOneForm::exact(ctx.space.clone(), Basis::Nabla, &s.source);
                        let diffs = lhs.differences(&rhs);
                        rec.record(diffs.is_empty(), || {
                            let (slot, d) = &diffs[0];
                            format!("df = {}: residual on {} = {}", ctx.show(&s.source), lhs.slot_label(*slot), ctx.show(d))
                        });
                    }
                    outcome.push(format!(
                        "K^3 step uses -J^-1(R K^1); later steps realized: {}; displayed sign matches solver: {}; uniform minus sign matches solver: {}",
                        if realized { "yes" } else { "no" },
                        displayed_ok,
                        minus_ok
                    ));
                    Ok(())
                },
            );
            rec.with_note(outcome.join("; "))
        }),
    ];
    for kind in [
        FastpathKind::FunctionFunction,
        FastpathKind::FunctionDifferential,
        FastpathKind::DifferentialDifferential,
    ] {
        out.push(Box::new(move |ctx: &Context| {
            let rec = guarded(
                &format!("fastpath.{}", kind.label()),
                "closed-form brackets of functions and exact 1-forms against the solver",
                |rec| {
                    for (f, h) in consecutive(&ctx.corpus.functions) {
                        let (a, b) = fastpath_arguments(kind, f, h, &ctx.chart);
                        let solver = ctx.even.bracket(&a, &b)?;
                        let fast = bracket_fastpath(kind, f, h, &ctx.chart);
                        equality(ctx, rec, &fast, &solver, || format!("at ({}, {})", ctx.show(&a), ctx.show(&b)));
                    }
                    Ok(())
                },
            );
            if ctx.kahler() {
                rec
            } else {
                rec.informational("not a Kahler chart: agreement is reported, not asserted")
            }
        }));
    }
    out
}

fn kahler<'a>() -> Vec<Check<'a>> {
    let gate = |ctx: &Context, rec: CheckRecord| {
        if ctx.kahler() {
            rec
        } else {
            rec.informational("not a Kahler chart: the identity is reported, not asserted")
        }
    };
    vec![
        Box::new(|ctx: &Context| {
            let mut rec = CheckRecord::new("kahler.structure", "J^2 = -1 and nabla J = 0");
            let computed = ctx.kahler();
            let note = if computed { "the chart is Kahler" } else { "the chart is not Kahler" };
            match ctx.chart.kahler_expected() {
                Some(expected) => {
                    rec.record(expected == computed, || format!("declared kahler = {expected}, but {note}"));
                    rec.with_note(note)
                }
                None => rec.informational(format!("no expectation declared; {note}")),
            }
        }),
        Box::new(move |ctx: &Context| {
            let rec = guarded("kahler.k1", "first odd component K^1 = -d^nabla X_f", |rec| {
                for f in &ctx.corpus.functions {
                    let s = ctx.even.solve(&ctx.function(f).d())?;
                    let xf = ctx.chart.hamiltonian_vector_field(f).to_vvf();
                    let expected = -&ctx.chart.dnabla(&xf);
                    let k1 = s.k(1);
                    rec.record(k1 == expected, || {
                        format!(
                            "f = {}: K^1 + d^nabla X_f = {}",
                            ctx.show(&ctx.function(f)),
                            (&k1 - &expected).display_with(ctx.chart.coords())
                        )
                    });
                }
                Ok(())
            });
            gate(ctx, rec)
        }),
        Box::new(move |ctx: &Context| {
            let rec = guarded(
                "kahler.odd-from-even",
                "K^(2i+1) = (-1)^(i+1) d^nabla K^(2i) in every realized degree",
                |rec| {
                    let n = ctx.chart.dim();
                    for f in &ctx.corpus.functions {
                        let odd = ctx.even.solve(&ctx.function(f).d())?;
                        let even = ctx.even.solve(&ctx.function(f))?;
                        let mut i = 0;
                        while 2 * i + 1 <= n {
                            let expected = ctx.chart.dnabla(&even.k(2 * i));
                            let expected = if i % 2 == 0 { -&expected } else { expected };
                            let got = odd.k(2 * i + 1);
                            rec.record(got == expected, || {
                                format!(
                                    "f = {}, i = {i}: difference {}",
                                    ctx.show(&ctx.function(f)),
                                    (&got - &expected).display_with(ctx.chart.coords())
                                )
                            });
                            i += 1;
                        }
                    }
                    Ok(())
                },
            );
            gate(ctx, rec)
        }),
    ]
}

fn paracomplex<'a>() -> Vec<Check<'a>> {
    let para = |ctx: &Context| j_squared_is(&ctx.chart, 1);
    let gate = move |ctx: &Context, rec: CheckRecord| {
        if para(ctx) {
            rec
        } else {
            rec.informational("J is not an almost product structure on this chart")
        }
    };
    vec![
        Box::new(move |ctx: &Context| {
            let mut rec = CheckRecord::new("para.j-squared", "J^2 = Id");
            rec.record(para(ctx), || "J^2 is not the identity".into());
            gate(ctx, rec)
        }),
        Box::new(move |ctx: &Context| {
            let ch = &ctx.chart;
            let n = ch.dim();
            let mut rec = CheckRecord::new("para.omega-from-metric", "omega(A, B) = g(JA, B)");
            for a in 0..n {
                for b in 0..n {
                    let ea = ch.coordinate_field(a);
                    let eb = ch.coordinate_field(b);
                    let (l, r) = (ch.omega_on(&ea, &eb), ch.metric_on(&ch.apply_j(&ea), &eb));
                    rec.record(l == r, || ch.display(&Form::function(n, &l - &r)));
                }
            }
            gate(ctx, rec)
        }),
        Box::new(move |ctx: &Context| {
            let ch = &ctx.chart;
            let n = ch.dim();
            let mut rec = CheckRecord::new("para.hermitian", "g(JA, JB) = -g(A, B)");
            for a in 0..n {
                for b in 0..n {
                    let ea = ch.coordinate_field(a);
                    let eb = ch.coordinate_field(b);
                    let (l, r) = (ch.metric_on(&ch.apply_j(&ea), &ch.apply_j(&eb)), -ch.metric_on(&ea, &eb));
                    rec.record(l == r, || ch.display(&Form::function(n, &l - &r)));
                }
            }
            gate(ctx, rec)
        }),
        Box::new(move |ctx: &Context| {
            let rec = guarded(
                "para.canonical-j",
                "J is the canonical almost product structure of the tangent lift",
                |rec| {
                    match library::tangent_lift_base(ctx.chart.name()) {
                        Some(base) => {
                            let j = canonical_almost_product(&base)?;
                            rec.record(&j == ctx.chart.j_matrix(), || "J differs from the canonical structure".into());
                        }
                        None => rec.record(true, String::new),
                    }
                    Ok(())
                },
            );
            if library::tangent_lift_base(ctx.chart.name()).is_some() {
                gate(ctx, rec)
            } else {
                rec.informational("base metric unknown for this chart")
            }
        }),
        Box::new(move |ctx: &Context| {
            let rec = guarded(
                "para.hamiltonian-of-omega",
                "the Hamiltonian vector field of the symplectic form is insertion of J",
                |rec| {
                    let d = ctx.even.derivation(ctx.chart.omega_form())?;
                    let ij = Derivation::insertion_of(ctx.chart.j_tensor());
                    rec.record(d == ij, || derivation_witness(ctx, &d, &ij));
                    Ok(())
                },
            );
            gate(ctx, rec)
        }),
    ]
}

fn checks_for<'a>(suite: Suite) -> Vec<Check<'a>> {
    suite
        .members()
        .into_iter()
        .flat_map(|s| match s {
            Suite::Axioms => axioms(),
            Suite::Theorems => theorems(),
            Suite::Recursion => recursion(),
            Suite::Kahler => kahler(),
            Suite::Paracomplex => paracomplex(),
            Suite::All => unreachable!(),
        })
        .collect()
}

/// Runs a suite. Checks execute in parallel; the report keeps their fixed
/// order, so the output does not depend on scheduling.
pub fn run_suite(chart: &ChartGeometry, suite: Suite, seed: u64, samples: usize, max_form_degree: usize) -> Result<Report> {
    let ctx = Context::new(chart, seed, samples, max_form_degree)?;
    let checks = checks_for(suite);
    let records: Vec<CheckRecord> = checks.par_iter().map(|c| c(&ctx)).collect();
    let corpus = ctx.elements().iter().map(|f| ctx.show(f)).collect();
    Ok(Report::new(suite.name(), chart.name(), seed, samples, corpus, records))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn flat_plane_fails_only_on_the_sign_discrepancies() {
        let report = run_suite(&library::flat2(), Suite::All, 42, 4, 1).unwrap();
        let failing: Vec<&str> = report
            .checks
            .iter()
            .filter(|c| c.status == super::super::Status::Fail)
            .map(|c| c.id.as_str())
            .collect();
        assert_eq!(
            failing,
            [
                "ks.differential-identity",
                "defect.bracket",
                "defect.vector-field",
                "fastpath.df_dh",
                "kahler.k1",
                "kahler.odd-from-even"
            ]
        );
        assert!(report.checks.iter().filter(|c| c.status == super::super::Status::Fail).all(|c| c.witness.is_some()));
    }

    #[test]
    fn suite_names_parse() {
        for name in Suite::NAMES {
            assert_eq!(Suite::parse(name).unwrap().name(), name);
        }
        assert!(Suite::parse("everything").is_err());
    }
}
