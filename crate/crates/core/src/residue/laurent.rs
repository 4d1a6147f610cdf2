use super::coeff::CoeffPoly;
use super::kernel::PoleFamily;
use super::ResidueError;

/// Truncated Laurent series Σ_{i} c_i ε^{min_order+i} around a pole family's center.
#[derive(Clone, Debug, PartialEq)]
pub struct LaurentSeries {
    pub center: PoleFamily,
    pub min_order: i32,
    pub coeffs: Vec<CoeffPoly>,
}

impl LaurentSeries {
    pub fn new(center: PoleFamily, min_order: i32, coeffs: Vec<CoeffPoly>) -> Self {
        LaurentSeries { center, min_order, coeffs }
    }

    /// Highest order carried exactly.
    pub fn max_order(&self) -> i32 {
        self.min_order + self.coeffs.len() as i32 - 1
    }

    pub fn coefficient(&self, order: i32) -> Result<CoeffPoly, ResidueError> {
        if order < self.min_order {
            return Ok(CoeffPoly::zero());
        }
        if order > self.max_order() {
            return Err(ResidueError::Truncation(format!(
                "order {order} requested, series carries up to {}",
                self.max_order()
            )));
        }
        Ok(self.coeffs[(order - self.min_order) as usize].clone())
    }

    pub fn residue(&self) -> Result<CoeffPoly, ResidueError> {
        self.coefficient(-1)
    }

    /// Product truncated at the smaller of the two exact ranges.
    pub fn mul(&self, o: &LaurentSeries) -> LaurentSeries {
        let min = self.min_order + o.min_order;
        let top = (self.max_order() + o.min_order).min(o.max_order() + self.min_order);
        let mut coeffs = Vec::new();
        for ord in min..=top {
            let mut c = CoeffPoly::zero();
            for (i, a) in self.coeffs.iter().enumerate() {
                let j = ord - min - i as i32;
                if j < 0 || j as usize >= o.coeffs.len() {
                    continue;
                }
                c = c.add(&a.mul(&o.coeffs[j as usize]));
            }
            coeffs.push(c);
        }
        LaurentSeries::new(self.center.clone(), min, coeffs)
    }
}
