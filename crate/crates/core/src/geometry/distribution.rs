use crate::error::{Error, Result};
use crate::expr::Expression;
use crate::geometry::Chart;
use crate::linalg::{Mat, Vector};

/// A vertical distribution 𝒱, either the kernel of a map's differential or
/// spanned by explicit vector fields.
#[derive(Clone, Debug)]
pub enum DistributionSpec {
    FromMap,
    Explicit { fields: Vec<Vec<Expression>> },
}

/// Spanning fields and their derivatives at a point.
#[derive(Clone, Debug)]
pub struct DistributionJet {
    /// m×k, one spanning field per column.
    pub span: Mat,
    /// `dspan[i]` is `∂_i` of `span`.
    pub dspan: Vec<Mat>,
}

impl DistributionSpec {
    pub fn explicit(chart: &Chart, fields: &[Vec<&str>]) -> Result<Self> {
        let m = chart.dim();
        let fields = fields
            .iter()
            .map(|f| {
                if f.len() != m {
                    return Err(Error::InvalidDeclaration(format!("spanning field needs {m} components")));
                }
                f.iter().map(|s| chart.parse(s)).collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        if fields.is_empty() || fields.len() >= m {
            return Err(Error::InvalidDeclaration(format!("distribution rank {} outside 1..{m}", fields.len())));
        }
        Ok(DistributionSpec::Explicit { fields })
    }

    pub fn rank(&self) -> Option<usize> {
        match self {
            DistributionSpec::FromMap => None,
            DistributionSpec::Explicit { fields } => Some(fields.len()),
        }
    }

    pub fn jet_at(&self, x: &[f64]) -> Result<DistributionJet> {
        let DistributionSpec::Explicit { fields } = self else {
            return Err(Error::Missing("explicit spanning fields"));
        };
        let (m, k) = (x.len(), fields.len());
        let mut span = Mat::zeros(m, k);
        let mut dspan = vec![Mat::zeros(m, k); m];
        for (a, f) in fields.iter().enumerate() {
            for (r, e) in f.iter().enumerate() {
                let j = e.eval_jet2(x)?;
                span[(r, a)] = j.value();
                for (i, d) in dspan.iter_mut().enumerate() {
                    d[(r, a)] = j.grad(i);
                }
            }
        }
        Ok(DistributionJet { span, dspan })
    }
}

impl DistributionJet {
    pub fn field(&self, a: usize) -> Vector {
        self.span.column(a).into_owned()
    }

    /// Directional derivative `X(S_a)` of spanning field `a`.
    pub fn derivative_along(&self, a: usize, x: &Vector) -> Vector {
        let m = self.span.nrows();
        let mut out = Vector::zeros(m);
        for i in 0..m {
            out += self.dspan[i].column(a) * x[i];
        }
        out
    }
}
