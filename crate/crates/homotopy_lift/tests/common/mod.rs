#![allow(dead_code)]

use std::sync::{Arc, OnceLock};

use homotopy_lift::SecondaryChainMap;
use resolution::{ExtClass, Resolution};
use secondary_lift::{SecondaryResolution, SecondaryValue};
use steenrod_milnor::ModulePresentation;

pub const N: i32 = 34;
pub const S: u32 = 12;

pub fn sphere() -> &'static Arc<SecondaryResolution> {
    static SEC: OnceLock<Arc<SecondaryResolution>> = OnceLock::new();
    SEC.get_or_init(|| {
        let mut res = Resolution::new(ModulePresentation::sphere());
        res.extend(N, S).unwrap();
        let mut sec = SecondaryResolution::new(Arc::new(res));
        sec.compute().unwrap();
        Arc::new(sec)
    })
}

pub fn res() -> &'static Arc<Resolution> {
    sphere().resolution()
}

pub fn basis(n: i32, s: u32, i: usize) -> ExtClass {
    ExtClass::basis(res(), n, s, i).unwrap()
}

pub fn classes(n: i32, s: u32) -> Vec<ExtClass> {
    (0..res().num_gens(s, n + s as i32).unwrap()).map(|i| basis(n, s, i)).collect()
}

pub fn lift(x: ExtClass) -> SecondaryValue {
    SecondaryValue::lift(res(), x).unwrap()
}

pub fn tau(y: ExtClass) -> SecondaryValue {
    SecondaryValue::tau(res(), y).unwrap()
}

pub fn h(i: u32) -> ExtClass {
    basis((1 << i) - 1, 1, 0)
}

pub fn mul(i: u32, x: &ExtClass) -> ExtClass {
    res().filtration_one_product(i, x).unwrap()
}

pub fn map(v: SecondaryValue) -> Arc<SecondaryChainMap> {
    Arc::new(SecondaryChainMap::lift(sphere().clone(), sphere().clone(), v).unwrap())
}

/// Memoized standard-lift chain maps of the `h_i`.
pub fn h_map(i: u32) -> Arc<SecondaryChainMap> {
    static MAPS: OnceLock<Vec<Arc<SecondaryChainMap>>> = OnceLock::new();
    MAPS.get_or_init(|| (0..4).map(|i| map(lift(h(i)))).collect())[i as usize].clone()
}

pub fn value(e: ExtClass, f: ExtClass) -> SecondaryValue {
    SecondaryValue::new(e, f)
}
