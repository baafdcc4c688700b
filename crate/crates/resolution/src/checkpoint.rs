//! Binary checkpoints: the magic `ADSEC1`, the module, then every stage's
//! computed range and generator boundaries. Solvers are rebuilt on demand.

use std::collections::BTreeMap;
use std::fs::File;
use std::io::{BufReader, BufWriter, Read, Write};
use std::path::Path;
use std::sync::Arc;

use byteorder::{ReadBytesExt, WriteBytesExt, LE};
use fp_linalg::FVector;
use steenrod_milnor::{MilnorAlgebra, MilnorProfile, ModulePresentation};

use crate::free::{FreeElt, GenId};
use crate::resolution::{Resolution, ResolutionError, Stage};

const MAGIC: &[u8; 6] = b"ADSEC1";

fn corrupt(msg: impl Into<String>) -> ResolutionError {
    ResolutionError::Checkpoint(msg.into())
}

fn write_vec(w: &mut impl Write, v: &FVector) -> std::io::Result<()> {
    w.write_u32::<LE>(v.len() as u32)?;
    for &x in v.words() {
        w.write_u64::<LE>(x)?;
    }
    Ok(())
}

fn read_vec(r: &mut impl Read) -> Result<FVector, ResolutionError> {
    let len = r.read_u32::<LE>()? as usize;
    let words = (0..len.div_ceil(64)).map(|_| r.read_u64::<LE>()).collect::<Result<Vec<_>, _>>()?;
    let v = FVector::from_words(len, words.clone());
    if v.words() != words.as_slice() {
        return Err(corrupt("vector has bits past its length"));
    }
    Ok(v)
}

fn write_module(w: &mut impl Write, m: &ModulePresentation) -> std::io::Result<()> {
    let name = m.name().as_bytes();
    w.write_u32::<LE>(name.len() as u32)?;
    w.write_all(name)?;
    w.write_u32::<LE>(m.gen_degrees().len() as u32)?;
    for &d in m.gen_degrees() {
        w.write_i32::<LE>(d)?;
    }
    match m.cap() {
        Some(c) => {
            w.write_u8(1)?;
            w.write_i32::<LE>(c)?;
        }
        None => w.write_u8(0)?,
    }
    let actions: Vec<_> = m.actions().collect();
    w.write_u32::<LE>(actions.len() as u32)?;
    for (op, src, targets) in actions {
        w.write_u32::<LE>(op.len() as u32)?;
        for &e in op.entries() {
            w.write_u32::<LE>(e)?;
        }
        w.write_u32::<LE>(src as u32)?;
        w.write_u32::<LE>(targets.len() as u32)?;
        for &t in targets {
            w.write_u32::<LE>(t as u32)?;
        }
    }
    Ok(())
}

fn read_module(r: &mut impl Read) -> Result<ModulePresentation, ResolutionError> {
    let n = r.read_u32::<LE>()? as usize;
    let mut name = vec![0u8; n];
    r.read_exact(&mut name)?;
    let name = String::from_utf8(name).map_err(|_| corrupt("module name is not UTF-8"))?;
    let n = r.read_u32::<LE>()? as usize;
    let degrees = (0..n).map(|_| r.read_i32::<LE>()).collect::<Result<Vec<_>, _>>()?;
    let mut m = ModulePresentation::new(name, degrees).map_err(|e| corrupt(e.to_string()))?;
    let cap = match r.read_u8()? {
        0 => None,
        1 => Some(r.read_i32::<LE>()?),
        x => return Err(corrupt(format!("bad cap flag {x}"))),
    };
    m.set_cap(cap);
    for _ in 0..r.read_u32::<LE>()? {
        let len = r.read_u32::<LE>()? as usize;
        let op = MilnorProfile::new((0..len).map(|_| r.read_u32::<LE>()).collect::<Result<Vec<_>, _>>()?);
        let src = r.read_u32::<LE>()? as usize;
        let k = r.read_u32::<LE>()? as usize;
        let targets = (0..k).map(|_| r.read_u32::<LE>().map(|x| x as usize)).collect::<Result<Vec<_>, _>>()?;
        m.set_action(op, src, targets).map_err(|e| corrupt(e.to_string()))?;
    }
    Ok(m)
}

fn read_stages(r: &mut impl Read) -> Result<Vec<Stage>, ResolutionError> {
    let mut stages = Vec::new();
    for s in 0..r.read_u32::<LE>()? {
        let raw = r.read_i32::<LE>()?;
        let max_t = (raw != i32::MIN).then_some(raw);
        let mut gens = BTreeMap::new();
        for _ in 0..r.read_u32::<LE>()? {
            let t = r.read_i32::<LE>()?;
            if max_t.is_none_or(|m| t > m) {
                return Err(corrupt(format!("generator degree {t} beyond computed range at s={s}")));
            }
            let n = r.read_u32::<LE>()? as usize;
            let mut list = Vec::with_capacity(n);
            for _ in 0..n {
                let k = r.read_u32::<LE>()? as usize;
                let mut terms = Vec::with_capacity(k);
                for _ in 0..k {
                    let gt = r.read_i32::<LE>()?;
                    let idx = r.read_u32::<LE>()? as usize;
                    if gt > t {
                        return Err(corrupt("boundary term above generator degree"));
                    }
                    terms.push((GenId::new(gt, idx), read_vec(r)?));
                }
                list.push(FreeElt::from_terms(t, terms));
            }
            gens.insert(t, list);
        }
        stages.push(Stage { gens, max_t });
    }
    Ok(stages)
}

impl Resolution {
    pub fn save(&self, path: impl AsRef<Path>) -> Result<(), ResolutionError> {
        let mut w = BufWriter::new(File::create(path)?);
        self.write_to(&mut w)?;
        w.flush()?;
        Ok(())
    }

    pub fn write_to(&self, w: &mut impl Write) -> Result<(), ResolutionError> {
        w.write_all(MAGIC)?;
        write_module(w, &self.module)?;
        w.write_u32::<LE>(self.stages.len() as u32)?;
        for st in &self.stages {
            w.write_i32::<LE>(st.max_t.unwrap_or(i32::MIN))?;
            w.write_u32::<LE>(st.gens.len() as u32)?;
            for (&t, gens) in &st.gens {
                w.write_i32::<LE>(t)?;
                w.write_u32::<LE>(gens.len() as u32)?;
                for d in gens {
                    w.write_u32::<LE>(d.terms().len() as u32)?;
                    for (g, c) in d.terms() {
                        w.write_i32::<LE>(g.t)?;
                        w.write_u32::<LE>(g.idx as u32)?;
                        write_vec(w, c)?;
                    }
                }
            }
        }
        Ok(())
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self, ResolutionError> {
        Self::read_from(&mut BufReader::new(File::open(path)?))
    }

    pub fn read_from(r: &mut impl Read) -> Result<Self, ResolutionError> {
        let mut magic = [0u8; 6];
        r.read_exact(&mut magic).map_err(|_| corrupt("file too short"))?;
        if &magic != MAGIC {
            return Err(corrupt(format!("bad magic {:?} (expected {:?})", String::from_utf8_lossy(&magic), "ADSEC1")));
        }
        let truncated = |e: ResolutionError| match e {
            ResolutionError::Io(io) if io.kind() == std::io::ErrorKind::UnexpectedEof => corrupt("truncated file"),
            e => e,
        };
        let module = read_module(r).map_err(truncated)?;
        let stages = read_stages(r).map_err(truncated)?;
        let top = stages.iter().filter_map(|st| st.max_t).fold(module.top_degree().max(1), i32::max);
        let mut rest = [0u8; 1];
        if r.read(&mut rest)? != 0 {
            return Err(corrupt("trailing data"));
        }
        let alg = Arc::new(MilnorAlgebra::new(top));
        let res = Resolution::from_parts(module, alg, stages);
        res.check_coefficients()?;
        Ok(res)
    }

    /// Checks that every boundary coefficient has the length its degree demands.
    fn check_coefficients(&self) -> Result<(), ResolutionError> {
        for (s, st) in self.stages.iter().enumerate() {
            for (&t, gens) in &st.gens {
                for d in gens {
                    for (g, c) in d.terms() {
                        let expect = if s == 0 { 1 } else { self.alg.dimension(t - g.t) };
                        if c.len() != expect {
                            return Err(corrupt(format!("coefficient length {} ≠ {expect} at s={s}, t={t}", c.len())));
                        }
                    }
                }
            }
        }
        Ok(())
    }
}
