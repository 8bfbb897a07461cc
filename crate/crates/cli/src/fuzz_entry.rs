//! Byte-level entry points shared by the cargo-fuzz targets and the corpus
//! replay test. Each must return without panicking on any input.

use egeo_core::cech::{check_reduction, class_order, is_2cocycle, pgl_cocycle_defect};
use egeo_core::gluing::parse_loop_word;
use egeo_core::satake::{d_product_oracle, is_222_product, is_22_product, SpectralClass};
use egeo_core::separability::finest_product_partition;
use egeo_core::splitting::{factor_sumset, SplittingType};

use crate::formats::{
    parse_cover_json, parse_eigs, parse_i64_list, parse_partition_json, parse_shape, parse_state_json, PartitionJson,
    StateJson,
};

pub type Entry = fn(&[u8]);

pub const TARGETS: [(&str, Entry); 7] = [
    ("state_json", state_json),
    ("partition_json", partition_json),
    ("cover_json", cover_json),
    ("eigs", eigs),
    ("degrees_shape", degrees_shape),
    ("loop_word", loop_word),
    ("cli_argv", cli_argv),
];

pub fn state_json(data: &[u8]) {
    let Ok(text) = std::str::from_utf8(data) else { return };
    let Ok(psi) = parse_state_json(text) else { return };
    let echo = serde_json::to_string(&StateJson::from_state(&psi)).expect("finite");
    let back = parse_state_json(&echo).expect("echoed state parses");
    assert_eq!(back.dims(), psi.dims());
    if psi.dims().iter().product::<usize>() <= 64 {
        let _ = finest_product_partition(&psi, 1e-9);
    }
}

pub fn partition_json(data: &[u8]) {
    let Ok(text) = std::str::from_utf8(data) else { return };
    let Ok(p) = parse_partition_json(text) else { return };
    let echo = serde_json::to_string(&PartitionJson::from_partition(&p)).expect("plain integers");
    assert_eq!(parse_partition_json(&echo).expect("echoed partition parses"), p);
}

pub fn cover_json(data: &[u8]) {
    let Ok(text) = std::str::from_utf8(data) else { return };
    let Ok((cover, m)) = parse_cover_json(text) else { return };
    if let Ok(c) = pgl_cocycle_defect(&cover, m) {
        if is_2cocycle(&c, &cover) {
            let _ = class_order(&c, &cover);
        }
    }
    if cover.n == 4 {
        let _ = check_reduction(&cover, 2, 2, 1e-9);
    }
}

pub fn eigs(data: &[u8]) {
    let Ok(text) = std::str::from_utf8(data) else { return };
    let Ok(eigs) = parse_eigs(text) else { return };
    let Ok(s) = SpectralClass::new(eigs) else { return };
    match s.len() {
        4 => {
            let _ = is_22_product(&s, 1e-8);
            let _ = d_product_oracle(&s, &[2, 2], 1e-8);
        }
        8 => {
            let _ = is_222_product(&s, 1e-8);
        }
        _ => {}
    }
}

/// Input is `<degrees>\n<shape>`; the shape defaults to `2x2`.
pub fn degrees_shape(data: &[u8]) {
    let Ok(text) = std::str::from_utf8(data) else { return };
    let (degrees, shape) = text.split_once('\n').unwrap_or((text, "2x2"));
    let (Ok(a), Ok((d_a, d_b))) = (parse_i64_list(degrees), parse_shape(shape)) else { return };
    if a.iter().any(|x| x.unsigned_abs() > 1 << 40) {
        return;
    }
    let a = SplittingType::new(a);
    if let Ok(Some(f)) = factor_sumset(&a, d_a, d_b) {
        assert_eq!(f.recombine(), a);
    }
}

pub fn loop_word(data: &[u8]) {
    let Ok(text) = std::str::from_utf8(data) else { return };
    if let Ok(letters) = parse_loop_word(text) {
        assert_eq!(letters.len(), text.chars().count());
    }
}

/// NUL-separated arguments after the program name.
pub fn cli_argv(data: &[u8]) {
    let Ok(text) = std::str::from_utf8(data) else { return };
    let args: Vec<&str> = text.split('\0').collect();
    // the battery reads no input and is slow
    if args.first() == Some(&"repro") {
        return;
    }
    let out = crate::run(std::iter::once("egeo").chain(args));
    assert!((0..=2).contains(&out.code));
}
