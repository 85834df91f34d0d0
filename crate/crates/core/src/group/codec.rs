//! Stable byte encoding of elements.
//!
//! Each element is written as a little-endian `u32` payload length followed
//! by the payload:
//!
//! - `Int`: one `i64` LE
//! - `Vector`: `d` × `i64` LE
//! - `Dihedral`: `i64` LE translation, then one byte (0 rotation, 1 reflection)
//! - `Index`: one `u32` LE
//! - `Heisenberg`: three `i64` LE
//! - `Residues`: `d` × `u32` LE
//! - `Burnside`: three bytes
//! - `Word`: one signed byte per letter
//!
//! Tuples are the concatenation of their entries' encodings.

use super::{Element, GroupSpec};
use crate::error::{Error, Result};

pub(super) fn encode(g: &Element, out: &mut Vec<u8>) {
    let start = out.len();
    out.extend_from_slice(&[0; 4]);
    match g {
        Element::Int(x) => out.extend_from_slice(&x.to_le_bytes()),
        Element::Vector(v) => v.iter().for_each(|x| out.extend_from_slice(&x.to_le_bytes())),
        Element::Dihedral { t, flip } => {
            out.extend_from_slice(&t.to_le_bytes());
            out.push(*flip as u8);
        }
        Element::Index(i) => out.extend_from_slice(&i.to_le_bytes()),
        Element::Heisenberg(c) => c.iter().for_each(|x| out.extend_from_slice(&x.to_le_bytes())),
        Element::Residues(v) => v.iter().for_each(|x| out.extend_from_slice(&x.to_le_bytes())),
        Element::Burnside(c) => out.extend_from_slice(c),
        Element::Word(w) => out.extend(w.iter().map(|&l| l as u8)),
    }
    let len = (out.len() - start - 4) as u32;
    out[start..start + 4].copy_from_slice(&len.to_le_bytes());
}

fn i64s(p: &[u8]) -> Vec<i64> {
    p.chunks_exact(8)
        .map(|c| i64::from_le_bytes(c.try_into().unwrap()))
        .collect()
}

pub(super) fn decode(spec: &GroupSpec, bytes: &[u8]) -> Result<(Element, usize)> {
    let bad = |why: &str| Error::usage(format!("malformed element encoding: {why}"));
    if bytes.len() < 4 {
        return Err(bad("truncated length prefix"));
    }
    let len = u32::from_le_bytes(bytes[..4].try_into().unwrap()) as usize;
    let p = bytes.get(4..4 + len).ok_or_else(|| bad("truncated payload"))?;
    let g = match spec {
        GroupSpec::Integers if len == 8 => Element::Int(i64s(p)[0]),
        GroupSpec::FreeAbelian { d } if len == 8 * d => Element::Vector(i64s(p)),
        GroupSpec::InfiniteDihedral if len == 9 && p[8] <= 1 => Element::Dihedral {
            t: i64s(&p[..8])[0],
            flip: p[8] == 1,
        },
        GroupSpec::FiniteCayley { .. } if len == 4 => Element::Index(u32::from_le_bytes(p.try_into().unwrap())),
        GroupSpec::Heisenberg if len == 24 => Element::Heisenberg(i64s(p).try_into().unwrap()),
        GroupSpec::FiniteAbelianExp { d, .. } if len == 4 * d => Element::Residues(
            p.chunks_exact(4)
                .map(|c| u32::from_le_bytes(c.try_into().unwrap()))
                .collect(),
        ),
        GroupSpec::BurnsideB23 if len == 3 => Element::Burnside([p[0], p[1], p[2]]),
        GroupSpec::FreeGroup { .. } => Element::Word(p.iter().map(|&b| b as i8).collect()),
        _ => return Err(bad("payload length does not match group kind")),
    };
    Ok((g, 4 + len))
}
