#![allow(dead_code)]

use std::sync::{Arc, OnceLock};

use homotopy_lift::{LiftError, SecondaryChainMap};
use resolution::{ExtClass, Resolution};
use secondary_lift::{SecondaryResolution, SecondaryValue};
use sseq_engine::{
    e3_page, extract_hidden, leibniz_propagate, D2Data, DerivedDifferential, Differential, HiddenExtension, Multiplier,
    PageData, ProductTable,
};
use steenrod_milnor::ModulePresentation;

pub const N: i32 = 34;
pub const S: u32 = 12;

pub struct World {
    pub sec: Arc<SecondaryResolution>,
    pub d2: D2Data,
    pub page: PageData,
    pub table: ProductTable,
    pub products: Vec<(String, Vec<(ExtClass, SecondaryValue)>)>,
    pub exts: Vec<HiddenExtension>,
    pub known: Vec<Differential>,
    pub derived: Vec<DerivedDifferential>,
}

pub fn basis(n: i32, s: u32, i: usize) -> ExtClass {
    ExtClass::basis(world().sec.resolution(), n, s, i).unwrap()
}

pub fn mul(i: u32, x: &ExtClass) -> ExtClass {
    world().sec.resolution().filtration_one_product(i, x).unwrap()
}

/// All products `[α][x]` with standard lifts of surviving basis classes.
pub fn all_products(m: &SecondaryChainMap) -> Vec<(ExtClass, SecondaryValue)> {
    let res = m.target().resolution();
    let mut out = Vec::new();
    for n in 0..=N {
        for s in 0..=S {
            match m.products_in(n, s) {
                Ok(v) => out.extend(v.into_iter().map(|(i, p)| (ExtClass::basis(res, n, s, i).unwrap(), p))),
                Err(LiftError::NotComputed { .. } | LiftError::Resolution(_)) => {}
                Err(e) => panic!("{e}"),
            }
        }
    }
    out
}

pub fn world() -> &'static World {
    static W: OnceLock<World> = OnceLock::new();
    W.get_or_init(|| {
        let mut res = Resolution::new(ModulePresentation::sphere());
        res.extend(N, S).unwrap();
        let mut sec = SecondaryResolution::new(Arc::new(res));
        sec.compute().unwrap();
        let sec = Arc::new(sec);
        let r = sec.resolution().clone();
        let d2 = D2Data::from_secondary(&sec, N, S).unwrap();
        let page = e3_page(&d2);
        let lift = |x: ExtClass| SecondaryValue::lift(&r, x).unwrap();
        let map = |v: SecondaryValue| SecondaryChainMap::lift(sec.clone(), sec.clone(), v).unwrap();
        let h0 = map(lift(ExtClass::basis(&r, 0, 1, 0).unwrap()));
        let h0sq = h0.product(&lift(ExtClass::basis(&r, 0, 1, 0).unwrap())).unwrap();
        let multipliers = [
            ("h_0", h0),
            ("h_1", map(lift(ExtClass::basis(&r, 1, 1, 0).unwrap()))),
            ("h_2", map(lift(ExtClass::basis(&r, 3, 1, 0).unwrap()))),
            ("h_0^2", map(h0sq)),
            ("d_0", map(lift(ExtClass::basis(&r, 14, 4, 0).unwrap()))),
        ];
        let mut table = ProductTable::default();
        let mut products = Vec::new();
        let mut exts = Vec::new();
        for (name, m) in &multipliers {
            table.insert(Multiplier::from_chain_map(*name, m.chain_map(), N, S).unwrap());
            let p = all_products(m);
            exts.extend(extract_hidden(name, &p));
            products.push((name.to_string(), p));
        }
        let known = Differential::from_d2(&d2);
        let derived = leibniz_propagate(&known, &exts, &table, &page);
        World { sec, d2, page, table, products, exts, known, derived }
    })
}
