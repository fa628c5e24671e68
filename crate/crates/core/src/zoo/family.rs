//! Named R-matrix families with call-time parameter checking, plus an
//! optional single-entry perturbation used for fault injection.

use std::fmt;
use std::str::FromStr;

use crate::algebra::{Rat, Scalar, TensorOperator};
use crate::error::{Error, Result};
use crate::gauge::DynParams;

use super::{appendix, basic, dynamical, vertex};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Family {
    Yang,
    SixVertex,
    ElevenVertex,
    Dynamical,
    SemiDynamical,
    VertexGauge,
    VertexComponents,
    VertexExample1,
    VertexZ2Zero,
    ExplicitAppendix,
    ClassicalExplicit,
    MExplicit,
    MZero,
    RZero,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Param {
    Hbar,
    Z,
    Z1,
    Z2,
    Q,
}

impl Param {
    pub fn name(self) -> &'static str {
        match self {
            Param::Hbar => "hbar",
            Param::Z => "z",
            Param::Z1 => "z1",
            Param::Z2 => "z2",
            Param::Q => "q",
        }
    }
}

impl Family {
    pub const ALL: [Family; 14] = [
        Family::Yang,
        Family::SixVertex,
        Family::ElevenVertex,
        Family::Dynamical,
        Family::SemiDynamical,
        Family::VertexGauge,
        Family::VertexComponents,
        Family::VertexExample1,
        Family::VertexZ2Zero,
        Family::ExplicitAppendix,
        Family::ClassicalExplicit,
        Family::MExplicit,
        Family::MZero,
        Family::RZero,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Family::Yang => "yang",
            Family::SixVertex => "six-vertex",
            Family::ElevenVertex => "eleven-vertex",
            Family::Dynamical => "dynamical",
            Family::SemiDynamical => "semi-dynamical",
            Family::VertexGauge => "vertex-gauge",
            Family::VertexComponents => "vertex-components",
            Family::VertexExample1 => "vertex-example1",
            Family::VertexZ2Zero => "vertex-z2zero",
            Family::ExplicitAppendix => "explicit-appendix",
            Family::ClassicalExplicit => "classical-explicit",
            Family::MExplicit => "m-explicit",
            Family::MZero => "m-zero",
            Family::RZero => "r-zero",
        }
    }

    pub fn from_name(s: &str) -> Result<Family> {
        Family::ALL
            .into_iter()
            .find(|f| f.name() == s)
            .ok_or_else(|| Error::UnknownFamily(s.to_string()))
    }

    /// Parameters consumed, in canonical order.
    pub fn signature(self) -> &'static [Param] {
        use Param::*;
        match self {
            Family::Yang
            | Family::SixVertex
            | Family::ElevenVertex
            | Family::ExplicitAppendix
            | Family::VertexExample1 => &[Hbar, Z],
            Family::Dynamical | Family::VertexZ2Zero => &[Hbar, Z, Q],
            Family::SemiDynamical | Family::VertexGauge | Family::VertexComponents => {
                &[Hbar, Z1, Z2, Q]
            }
            Family::ClassicalExplicit | Family::MExplicit => &[Z],
            Family::MZero | Family::RZero => &[],
        }
    }

    pub fn consumes(self, p: Param) -> bool {
        self.signature().contains(&p)
    }

    pub fn supports_n(self, n: usize) -> bool {
        match self {
            Family::SixVertex | Family::ElevenVertex => n == 2,
            _ => n >= 2 || (n == 1 && matches!(self, Family::Yang)),
        }
    }

    /// Families that take `q` but whose output does not depend on it; these
    /// fall back to `q_i = i` when no `q` is supplied.
    pub fn q_independent(self) -> bool {
        matches!(
            self,
            Family::VertexGauge | Family::VertexComponents | Family::VertexZ2Zero
        )
    }

    fn missing(self, p: Param) -> Error {
        Error::MissingParam {
            family: self.name().into(),
            param: p.name().into(),
        }
    }

    /// Build the family at the given point.
    pub fn build<S: Scalar>(self, n: usize, p: &Params<S>) -> Result<TensorOperator<S>> {
        if !self.supports_n(n) {
            return Err(Error::UnsupportedN {
                family: self.name().into(),
                n,
            });
        }
        let hbar = || p.hbar.clone().ok_or_else(|| self.missing(Param::Hbar));
        let z = || p.z_difference().ok_or_else(|| self.missing(Param::Z));
        let z12 = || p.z_pair().ok_or_else(|| self.missing(Param::Z1));
        let q = || -> Result<DynParams<S>> {
            match &p.q {
                Some(q) if q.n() != n => Err(Error::DimensionMismatch(format!(
                    "{} dynamical parameters for N = {n}",
                    q.n()
                ))),
                Some(q) => Ok(q.clone()),
                None if self.q_independent() => Ok(DynParams::canonical(n)),
                None => Err(self.missing(Param::Q)),
            }
        };
        use basic::ConstantVertex as CV;
        match self {
            Family::Yang => basic::constant_vertex(CV::Yang, n, &hbar()?, &z()?),
            Family::SixVertex => basic::constant_vertex(CV::SixVertex, n, &hbar()?, &z()?),
            Family::ElevenVertex => basic::constant_vertex(CV::ElevenVertex, n, &hbar()?, &z()?),
            Family::Dynamical => dynamical::r_dynamical(&hbar()?, &z()?, &q()?),
            Family::SemiDynamical => {
                let (z1, z2) = z12()?;
                dynamical::r_semidynamical(&hbar()?, &z1, &z2, &q()?)
            }
            Family::VertexGauge => {
                let (z1, z2) = z12()?;
                vertex::r_vertex(&hbar()?, &z1, &z2, &q()?)
            }
            Family::VertexComponents => {
                let (z1, z2) = z12()?;
                vertex::r_vertex_components(&hbar()?, &z1, &z2, &q()?)
            }
            Family::VertexExample1 => vertex::r_vertex_example1(n, &hbar()?, &z()?),
            Family::VertexZ2Zero => vertex::r_vertex_z2zero(&hbar()?, &z()?, &q()?),
            Family::ExplicitAppendix => appendix::r_explicit(n, &hbar()?, &z()?),
            Family::ClassicalExplicit => appendix::classical_r(n, &z()?),
            Family::MExplicit => appendix::m_explicit(n, &z()?),
            Family::MZero => Ok(appendix::m_zero(n).map(|x| S::from_rat(x.clone()))),
            Family::RZero => Ok(appendix::r_zero(n).map(|x| S::from_rat(x.clone()))),
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Family {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Family::from_name(s)
    }
}

/// Point at which to evaluate a family. `z` and `(z1, z2)` stand in for each
/// other: `z` defaults to `z1 − z2`, and `(z1, z2)` to `(z/2, −z/2)`.
#[derive(Clone, Debug)]
pub struct Params<S> {
    pub hbar: Option<S>,
    pub z: Option<S>,
    pub z1: Option<S>,
    pub z2: Option<S>,
    pub q: Option<DynParams<S>>,
}

impl<S: Scalar> Default for Params<S> {
    fn default() -> Self {
        Params {
            hbar: None,
            z: None,
            z1: None,
            z2: None,
            q: None,
        }
    }
}

impl<S: Scalar> Params<S> {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn hbar(mut self, h: S) -> Self {
        self.hbar = Some(h);
        self
    }

    pub fn z(mut self, z: S) -> Self {
        self.z = Some(z);
        self
    }

    pub fn z12(mut self, z1: S, z2: S) -> Self {
        self.z1 = Some(z1);
        self.z2 = Some(z2);
        self
    }

    pub fn q(mut self, q: DynParams<S>) -> Self {
        self.q = Some(q);
        self
    }

    pub fn z_difference(&self) -> Option<S> {
        if let Some(z) = &self.z {
            return Some(z.clone());
        }
        match (&self.z1, &self.z2) {
            (Some(a), Some(b)) => Some(a.clone() - b.clone()),
            _ => None,
        }
    }

    pub fn z_pair(&self) -> Option<(S, S)> {
        if let (Some(a), Some(b)) = (&self.z1, &self.z2) {
            return Some((a.clone(), b.clone()));
        }
        let z = self.z.as_ref()?;
        let half = z.scale_rat(&Rat::new(1, 2));
        Some((half.clone(), -half))
    }
}

/// Adds `delta` to one entry of one family's output.
#[derive(Clone, Debug, PartialEq)]
pub struct Perturbation {
    pub family: Family,
    pub row: usize,
    pub col: usize,
    pub delta: Rat,
}

/// Family builder used by the verifier; carries an optional perturbation
/// so that fault injection reaches every check that touches the family.
#[derive(Clone, Debug, Default)]
pub struct Zoo {
    perturbation: Option<Perturbation>,
}

impl Zoo {
    pub fn new() -> Self {
        Zoo::default()
    }

    pub fn perturbed(p: Perturbation) -> Self {
        Zoo {
            perturbation: Some(p),
        }
    }

    pub fn perturbation(&self) -> Option<&Perturbation> {
        self.perturbation.as_ref()
    }

    pub fn build<S: Scalar>(
        &self,
        family: Family,
        n: usize,
        p: &Params<S>,
    ) -> Result<TensorOperator<S>> {
        let mut m = family.build(n, p)?;
        if let Some(pt) = &self.perturbation {
            if pt.family == family && pt.row < m.dim() && pt.col < m.dim() {
                m.add_to(pt.row, pt.col, S::from_rat(pt.delta.clone()));
            }
        }
        Ok(m)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn names_round_trip() {
        for f in Family::ALL {
            assert_eq!(Family::from_name(f.name()).unwrap(), f);
        }
        assert!(matches!(Family::from_name("xyz"), Err(Error::UnknownFamily(_))));
    }

    #[test]
    fn missing_q_is_reported() {
        let p = Params::new()
            .hbar(Rat::new(1, 2))
            .z12(Rat::from_int(1), Rat::from_int(3));
        let e = Family::SemiDynamical.build(2, &p).unwrap_err();
        assert!(matches!(e, Error::MissingParam { ref param, .. } if param == "q"));
        // q-independent families fall back to q_i = i
        assert!(Family::VertexGauge.build(2, &p).is_ok());
    }

    #[test]
    fn z_defaults() {
        let p = Params::new().z(Rat::from_int(3));
        let (a, b) = p.z_pair().unwrap();
        assert_eq!(a, Rat::new(3, 2));
        assert_eq!(b, Rat::new(-3, 2));
        let p = Params::new().z12(Rat::from_int(5), Rat::from_int(2));
        assert_eq!(p.z_difference().unwrap(), Rat::from_int(3));
    }

    #[test]
    fn perturbation_hits_only_its_family() {
        let p = Params::new().hbar(Rat::one()).z(Rat::one());
        let zoo = Zoo::perturbed(Perturbation {
            family: Family::Yang,
            row: 0,
            col: 1,
            delta: Rat::one(),
        });
        let clean = Family::Yang.build(2, &p).unwrap();
        let bent = zoo.build(Family::Yang, 2, &p).unwrap();
        assert_eq!(*bent.get(0, 1), clean.get(0, 1) + &Rat::one());
        assert_eq!(
            zoo.build(Family::SixVertex, 2, &p).unwrap(),
            Family::SixVertex.build(2, &p).unwrap()
        );
    }
}
