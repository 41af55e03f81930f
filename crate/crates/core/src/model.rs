//! One-stop construction of the whole operator stack for a given `r`.

use std::sync::{Arc, OnceLock};

use crate::complex::DeRham;
use crate::cyclotomic::CycField;
use crate::error::Result;
use crate::forms::Calculus;
use crate::hodge::Hodge;
use crate::linalg::LinOp;
use crate::maxwell::Maxwell;

/// Calculus, de Rham complex, Hodge structure and Maxwell operator,
/// each built on first use.
pub struct Model {
    calc: Arc<Calculus>,
    cx: Arc<DeRham>,
    hodge: OnceLock<Arc<Hodge>>,
    maxwell: OnceLock<Arc<Maxwell>>,
}

impl Model {
    pub fn new(r: u32) -> Result<Self> {
        let field = CycField::get(r)?;
        let calc = Arc::new(Calculus::new(field));
        let cx = Arc::new(DeRham::new(calc.clone()));
        Ok(Self::wrap(calc, cx))
    }

    /// Reuse precomputed differentials `d_0 … d_3` (e.g. from a cache).
    pub fn from_differentials(r: u32, d: Vec<LinOp>) -> Result<Self> {
        let field = CycField::get(r)?;
        let calc = Arc::new(Calculus::new(field));
        let cx = Arc::new(DeRham::from_parts(calc.clone(), d)?);
        Ok(Self::wrap(calc, cx))
    }

    fn wrap(calc: Arc<Calculus>, cx: Arc<DeRham>) -> Self {
        Model {
            calc,
            cx,
            hodge: OnceLock::new(),
            maxwell: OnceLock::new(),
        }
    }

    pub fn r(&self) -> u32 {
        self.calc.r()
    }

    pub fn field(&self) -> &'static CycField {
        self.calc.field()
    }

    pub fn calculus(&self) -> &Arc<Calculus> {
        &self.calc
    }

    pub fn complex(&self) -> &Arc<DeRham> {
        &self.cx
    }

    pub fn hodge(&self) -> &Arc<Hodge> {
        self.hodge
            .get_or_init(|| Arc::new(Hodge::new(self.cx.clone()).expect("star table is valid for odd r")))
    }

    pub fn maxwell(&self) -> &Arc<Maxwell> {
        self.maxwell
            .get_or_init(|| Arc::new(Maxwell::new(self.hodge().clone())))
    }
}
