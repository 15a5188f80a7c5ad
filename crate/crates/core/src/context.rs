//! Every operator of one model, built once.

use crate::clifford::Multivector;
use crate::connection::HermitianData;
use crate::dirac::{HermitianDirac, RiemannianDirac};
use crate::lie::{FormOperators, LieModel};
use crate::scalar::Scalar;
use crate::sl2::{Sl2Error, Sl2Structure};

#[derive(Clone, Debug)]
pub struct ModelContext<S> {
    pub model: LieModel,
    pub sl2: Sl2Structure<S>,
    pub forms: FormOperators<S>,
    pub data: HermitianData<S>,
    pub riemannian: RiemannianDirac<S>,
    /// `B = D_{−1}`
    pub bismut: HermitianDirac<S>,
    pub tol: f64,
}

fn negligible<S: Scalar>(x: &Multivector<S>, tol: f64) -> bool {
    x.terms().all(|(_, c)| c.is_negligible(tol))
}

impl<S: Scalar> ModelContext<S> {
    pub fn new(model: LieModel, tol: f64) -> Result<Self, Sl2Error> {
        let sl2 = Sl2Structure::new(model.structure().clone(), tol)?;
        let forms = FormOperators::new(&model, &sl2).expect("built from the model's own structure");
        let data = HermitianData::new(&model, &forms);
        let riemannian = RiemannianDirac::new(&model, &sl2);
        let bismut = HermitianDirac::new(&model, &sl2, &data, -1, 1);
        Ok(ModelContext { model, sl2, forms, data, riemannian, bismut, tol })
    }

    pub fn hermitian(&self, num: i64, den: i64) -> HermitianDirac<S> {
        if (num, den) == (-1, 1) {
            return self.bismut.clone();
        }
        HermitianDirac::new(&self.model, &self.sl2, &self.data, num, den)
    }

    /// `dω = 0`
    pub fn almost_kaehler(&self) -> bool {
        negligible(&self.forms.domega, self.tol)
    }

    pub fn integrable(&self) -> bool {
        self.model.is_integrable()
    }

    pub fn kaehler(&self) -> bool {
        self.almost_kaehler() && self.integrable()
    }

    pub fn balanced(&self) -> bool {
        negligible(&self.forms.theta, self.tol)
    }
}
