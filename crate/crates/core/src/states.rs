//! Named three-qubit states used throughout the crate and its tests.

use crate::linalg::PureState3;

const FRAC_1_SQRT_3: f64 = 0.577_350_269_189_625_8;

/// `(|000⟩ + |111⟩)/√2`.
pub fn ghz() -> PureState3 {
    let h = std::f64::consts::FRAC_1_SQRT_2;
    PureState3::from_real([h, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, h]).unwrap()
}

/// `(|001⟩ + |010⟩ + |100⟩)/√3`.
pub fn w() -> PureState3 {
    let t = FRAC_1_SQRT_3;
    PureState3::from_real([0.0, t, t, 0.0, t, 0.0, 0.0, 0.0]).unwrap()
}

/// Bit-flipped W state, `(|110⟩ + |101⟩ + |011⟩)/√3`.
pub fn w_tilde() -> PureState3 {
    let t = FRAC_1_SQRT_3;
    PureState3::from_real([0.0, 0.0, 0.0, t, 0.0, t, t, 0.0]).unwrap()
}

/// `|000⟩/√10 + 2|101⟩/√5 + |110⟩/√10`.
pub fn psi5() -> PureState3 {
    let a = 0.1f64.sqrt();
    let b = 2.0 / 5.0f64.sqrt();
    PureState3::from_real([a, 0.0, 0.0, 0.0, 0.0, b, a, 0.0]).unwrap()
}

/// `3|000⟩/√20 + |101⟩/√10 + 3|110⟩/√20`.
pub fn psi6() -> PureState3 {
    let a = 3.0 / 20.0f64.sqrt();
    let b = 0.1f64.sqrt();
    PureState3::from_real([a, 0.0, 0.0, 0.0, 0.0, b, a, 0.0]).unwrap()
}

/// `|000⟩`.
pub fn product_zero() -> PureState3 {
    PureState3::basis(0)
}
