use std::collections::BTreeMap;

use crate::exact::{CyclotomicNumber, Rational};

use super::{CyclotomicMeasure, MeasureError};

/// One atom of a measure on the real line.
#[derive(Clone, Debug, PartialEq)]
pub struct RealAtom {
    pub location: CyclotomicNumber,
    pub weight: CyclotomicNumber,
}

/// Atomic measure on `[0, 4]`, atoms sorted by location.
#[derive(Clone, Debug, PartialEq)]
pub struct RealMeasure {
    atoms: Vec<RealAtom>,
}

impl RealMeasure {
    pub fn atoms(&self) -> &[RealAtom] {
        &self.atoms
    }

    pub fn moment(&self, k: u32) -> CyclotomicNumber {
        self.atoms
            .iter()
            .map(|a| &a.weight * &a.location.pow(k))
            .fold(CyclotomicNumber::zero(1), |acc, x| &acc + &x)
    }

    /// `∫ x^k` for `k = 0..count`, all required to be rational.
    pub fn rational_moments(&self, count: usize) -> Result<Vec<Rational>, MeasureError> {
        let mut sums = vec![CyclotomicNumber::zero(1); count];
        for atom in &self.atoms {
            let mut term = atom.weight.clone();
            for sum in sums.iter_mut() {
                *sum = &*sum + &term;
                term = &term * &atom.location;
            }
        }
        sums.into_iter()
            .enumerate()
            .map(|(k, m)| m.as_rational().map_err(|_| MeasureError::NotRational { moment: k }))
            .collect()
    }
}

/// Image under `u ↦ x = 2 + u² + u⁻²`.
///
/// Atoms with equal `x` merge. Each orbit `{±q, ±1/q}` maps to one point,
/// so symmetry is required.
pub fn pushforward_real(e: &CyclotomicMeasure) -> Result<RealMeasure, MeasureError> {
    e.check_symmetry()?;
    let n = e.support_order();
    let two = CyclotomicNumber::rational(n, Rational::from_integer(2.into()));
    let mut groups: BTreeMap<Vec<Rational>, RealAtom> = BTreeMap::new();
    for (j, w) in e.atoms() {
        let x = &(&two + &CyclotomicNumber::root_of_unity(n, 2 * j as i64))
            + &CyclotomicNumber::root_of_unity(n, -2 * j as i64);
        groups
            .entry(x.coefficients().to_vec())
            .and_modify(|a| a.weight = &a.weight + w)
            .or_insert_with(|| RealAtom {
                location: x,
                weight: w.clone(),
            });
    }
    let mut atoms: Vec<RealAtom> = groups.into_values().filter(|a| !a.weight.is_zero()).collect();
    atoms.sort_by(|a, b| a.location.to_complex().0.total_cmp(&b.location.to_complex().0));
    Ok(RealMeasure { atoms })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{int, rat};
    use crate::measures::{basic_measure, BaseMeasure};

    #[test]
    fn d1_maps_to_point_mass_at_4() {
        let r = pushforward_real(&basic_measure(BaseMeasure::D, 1)).unwrap();
        assert_eq!(r.atoms().len(), 1);
        assert_eq!(r.atoms()[0].location.as_rational(), Ok(int(4)));
        assert_eq!(r.atoms()[0].weight.as_rational(), Ok(int(1)));
    }

    #[test]
    fn d2_splits_between_0_and_4() {
        let r = pushforward_real(&basic_measure(BaseMeasure::D, 2)).unwrap();
        let locs: Vec<_> = r.atoms().iter().map(|a| a.location.as_rational().unwrap()).collect();
        assert_eq!(locs, vec![int(0), int(4)]);
        assert_eq!(r.rational_moments(3).unwrap(), vec![int(1), int(2), int(8)]);
    }

    #[test]
    fn moments_match_circle_side() {
        // ∫ x^k dν = ∫ (2 + u² + u⁻²)^k dε
        let e = basic_measure(BaseMeasure::DTriplePrime, 2);
        let r = pushforward_real(&e).unwrap();
        let m = r.rational_moments(4).unwrap();
        assert_eq!(m[0], int(1));
        // ∫ (2 + u² + u⁻²) = 2 + 2 m_2
        let m2 = e.moment(2).as_rational().unwrap();
        assert_eq!(m[1], int(2) + int(2) * m2);
        assert!(m.iter().all(|x| *x >= rat(0, 1)));
    }
}
