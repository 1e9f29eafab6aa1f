use crate::error::{Error, Result};
use crate::expr::Expression;
use crate::geometry::WeylStructure;
use crate::linalg::{Mat, Vector};

/// φ, dφ and the second derivatives of each component at a point.
#[derive(Clone, Debug)]
pub struct MapJets {
    pub phi: Vector,
    /// n×m Jacobian.
    pub dphi: Mat,
    /// `d2phi[γ]` is the m×m Hessian of component γ.
    pub d2phi: Vec<Mat>,
}

impl MapJets {
    /// Hessian of component γ applied to two vectors.
    pub fn hessian_on(&self, gamma: usize, u: &Vector, v: &Vector) -> f64 {
        (u.transpose() * &self.d2phi[gamma] * v)[(0, 0)]
    }

    /// The codomain vector `∂²φ(u, v)`.
    pub fn second_on(&self, u: &Vector, v: &Vector) -> Vector {
        Vector::from_iterator(self.d2phi.len(), (0..self.d2phi.len()).map(|c| self.hessian_on(c, u, v)))
    }
}

/// A smooth map between two Weyl structures, given componentwise.
#[derive(Clone, Debug)]
pub struct MapSpec {
    domain: WeylStructure,
    codomain: WeylStructure,
    components: Vec<Expression>,
}

impl MapSpec {
    pub fn new(domain: WeylStructure, codomain: WeylStructure, components: Vec<Expression>) -> Result<Self> {
        if components.len() != codomain.dim() {
            return Err(Error::InvalidDeclaration(format!(
                "map has {} components for a {}-dimensional codomain",
                components.len(),
                codomain.dim()
            )));
        }
        if let Some(e) = components.iter().find(|e| e.coords() != domain.chart().coords()) {
            return Err(Error::InvalidDeclaration(format!("map component '{e}' is not over the domain coordinates")));
        }
        Ok(MapSpec { domain, codomain, components })
    }

    pub fn parse(domain: WeylStructure, codomain: WeylStructure, components: &[&str]) -> Result<Self> {
        let comps = components
            .iter()
            .map(|s| domain.chart().parse(s))
            .collect::<Result<Vec<_>>>()?;
        Self::new(domain, codomain, comps)
    }

    pub fn domain(&self) -> &WeylStructure {
        &self.domain
    }

    pub fn codomain(&self) -> &WeylStructure {
        &self.codomain
    }

    pub fn components(&self) -> &[Expression] {
        &self.components
    }

    pub fn m(&self) -> usize {
        self.domain.dim()
    }

    pub fn n(&self) -> usize {
        self.codomain.dim()
    }

    pub fn with_domain(&self, domain: WeylStructure) -> Self {
        MapSpec { domain, ..self.clone() }
    }

    pub fn with_codomain(&self, codomain: WeylStructure) -> Self {
        MapSpec { codomain, ..self.clone() }
    }

    pub fn image(&self, x: &[f64]) -> Result<Vector> {
        let vals = self.components.iter().map(|e| e.eval(x)).collect::<Result<Vec<_>, _>>()?;
        Ok(Vector::from_vec(vals))
    }

    pub fn jets_at(&self, x: &[f64]) -> Result<MapJets> {
        let (m, n) = (self.m(), self.n());
        let mut phi = Vector::zeros(n);
        let mut dphi = Mat::zeros(n, m);
        let mut d2phi = vec![Mat::zeros(m, m); n];
        for (c, e) in self.components.iter().enumerate() {
            let j = e.eval_jet2(x)?;
            phi[c] = j.value();
            for i in 0..m {
                dphi[(c, i)] = j.grad(i);
                for k in 0..m {
                    d2phi[c][(i, k)] = j.hess(i, k);
                }
            }
        }
        Ok(MapJets { phi, dphi, d2phi })
    }

    /// Checks that `dφ(x)` has full rank n and that `φ(x)` lies in the
    /// codomain box.
    pub fn check_regular(&self, x: &[f64], jets: &MapJets) -> Result<()> {
        let n = self.n();
        let rank = jets.dphi.clone().svd(false, false).singular_values;
        let smax = rank.iter().fold(0.0_f64, |a, s| a.max(*s));
        if rank.iter().filter(|s| **s > 1e-9 * smax.max(1e-300)).count() < n || smax == 0.0 {
            return Err(Error::RankDeficient { point: x.to_vec(), expected: n });
        }
        if !self.codomain.chart().contains(jets.phi.as_slice()) {
            return Err(Error::OutsideCodomainBox { point: x.to_vec(), image: jets.phi.iter().copied().collect() });
        }
        Ok(())
    }
}
