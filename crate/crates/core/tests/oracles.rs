//! Frozen reference values: exact words, drawn coordinates, closed forms and
//! the derived IFS at a right angle.

#![allow(clippy::excessive_precision, clippy::approx_constant)]

use fibfrac::analysis::{
    aspect_limit, characteristic_roots, hausdorff_dimension, measured_seeds, scaling_ratio,
    wh_sequence,
};
use fibfrac::fmt::g17;
use fibfrac::ifs::{derive_ifs, derive_ifs_report, Ifs};
use fibfrac::turtle::{draw, export::write_csv, word_stats, TurnConvention};
use fibfrac::words::{decode_binary, encode_binary, fib_length, word_concat};
use fibfrac::Point;
use std::f64::consts::{FRAC_PI_2, FRAC_PI_3, FRAC_PI_4, SQRT_2};

#[test]
fn first_words_of_two_families() {
    let rows: [(u64, [&str; 5]); 2] = [
        (2, ["0", "01", "010", "01001", "01001010"]),
        (3, ["0", "001", "0010", "0010001", "00100010010"]),
    ];
    for (i, words) in rows {
        for (n, want) in (1..).zip(words) {
            assert_eq!(
                word_concat(i, n).unwrap().to_text(),
                want,
                "i = {i}, n = {n}"
            );
        }
    }
}

#[test]
fn word_lengths() {
    let want = [1, 2, 3, 5, 8, 13, 21, 34, 55, 89];
    for (n, len) in (1..).zip(want) {
        assert_eq!(fib_length(2, n).unwrap(), len);
    }
    assert_eq!(fib_length(3, 5).unwrap(), 11);
    assert_eq!(fib_length(2, 30).unwrap(), 1_346_269);
}

#[test]
fn binary_encoding_of_f5() {
    let w = word_concat(2, 5).unwrap();
    let bytes = encode_binary(w.symbols());
    assert_eq!(bytes, [8, 0, 0, 0, 0, 0, 0, 0, 0x52]);
    assert_eq!(decode_binary(&bytes).unwrap(), w.into_symbols());
}

#[test]
fn right_angle_curve_csv() {
    let c = draw(&word_concat(2, 4).unwrap(), FRAC_PI_2, 1.0).unwrap();
    let mut out = Vec::new();
    write_csv(&c.points, &mut out).unwrap();
    assert_eq!(
        String::from_utf8(out).unwrap(),
        "0,0\n0,1\n1,1\n2,1\n2,0\n3,0\n"
    );
}

#[test]
fn right_angle_widths_and_heights() {
    let widths = [7.0, 17.0, 41.0, 99.0, 239.0];
    let heights = [4.0, 11.0, 28.0, 69.0, 168.0];
    for (k, n) in [7, 10, 13, 16, 19].into_iter().enumerate() {
        let st = word_stats(
            &word_concat(2, n).unwrap(),
            FRAC_PI_2,
            1.0,
            TurnConvention::EvenLeft,
        )
        .unwrap();
        assert!((st.width - widths[k]).abs() < 1e-9, "n = {n}: {}", st.width);
        assert!(
            (st.height - heights[k]).abs() < 1e-9,
            "n = {n}: {}",
            st.height
        );
    }
    let seq = wh_sequence(FRAC_PI_2, measured_seeds(2, FRAC_PI_2, 7).unwrap(), 5).unwrap();
    for k in 0..5 {
        assert!((seq.w[k] - widths[k]).abs() < 1e-9);
        assert!((seq.h[k] - heights[k]).abs() < 1e-9);
        assert!((seq.closed_form(k as u32 + 1) - widths[k]).abs() < 1e-9);
    }
}

#[test]
fn closed_forms() {
    assert_eq!(scaling_ratio(0.0).unwrap(), 0.23606797749978969);
    assert_eq!(scaling_ratio(FRAC_PI_4).unwrap(), 0.27133037029769791);
    assert_eq!(scaling_ratio(FRAC_PI_2).unwrap(), 0.41421356237309509);
    assert_eq!(hausdorff_dimension(0.0).unwrap(), 1.0);
    assert_eq!(hausdorff_dimension(FRAC_PI_2).unwrap(), 1.6379382096763471);
    assert_eq!(hausdorff_dimension(FRAC_PI_4).unwrap(), 1.1067275521906674);
    assert_eq!(aspect_limit(FRAC_PI_4).unwrap(), 3.7979326519318137);
    assert_eq!(aspect_limit(FRAC_PI_2).unwrap(), 1.4142135623730949);
    let (rp, rm) = characteristic_roots(FRAC_PI_2).unwrap();
    assert!((rp - (1.0 + SQRT_2)).abs() < 1e-15);
    assert!((rm - (1.0 - SQRT_2)).abs() < 1e-15);
}

#[test]
fn aspect_at_order_34() {
    let st = word_stats(
        &word_concat(2, 34).unwrap(),
        FRAC_PI_3,
        1.0,
        TurnConvention::EvenLeft,
    )
    .unwrap();
    assert!((st.aspect - 2.6590229742263665).abs() < 1e-12);
    assert!((aspect_limit(FRAC_PI_3).unwrap() - 2.659016268655759).abs() < 1e-15);
}

#[test]
fn right_angle_ifs() {
    let (ifs, rep) = derive_ifs_report(2, FRAC_PI_2, 16).unwrap();
    let r = SQRT_2 - 1.0;
    assert!(!rep.chord_fallback);
    let mut scales = ifs.scales();
    scales.sort_by(f64::total_cmp);
    for (s, want) in scales.iter().zip([r * r, r, r, r, r]) {
        assert!((s - want).abs() < 1e-12, "{s}");
    }
    let reflecting: Vec<usize> = (0..5).filter(|&k| ifs.maps[k].reflect).collect();
    assert_eq!(reflecting, [0, 4]);
    assert!((ifs.maps[0].rotation - FRAC_PI_2).abs() < 1e-12);
    assert!((ifs.maps[4].rotation + FRAC_PI_2).abs() < 1e-12);
    let ty = ifs.maps.iter().map(|m| m.ty).fold(f64::MIN, f64::max);
    assert!((ty - 0.58578643762690485).abs() < 1e-12);
    let tx: Vec<f64> = ifs.maps.iter().map(|m| m.tx).collect();
    assert!(tx.iter().any(|x| (x - 0.82842712474619018).abs() < 1e-12));
    assert!(tx.iter().any(|x| (x - SQRT_2).abs() < 1e-12));
    // The first map fixes the start of the chord and the last fixes its end.
    assert!(ifs.maps[0].apply(Point::ORIGIN).norm() < 1e-12);
    let end = ifs.maps[4].apply(Point::new(SQRT_2, 0.0));
    assert!(end.dist(Point::new(SQRT_2, 0.0)) < 1e-12, "{end:?}");
}

#[test]
fn ifs_json_round_trip_is_exact() {
    let ifs = derive_ifs(3, 0.7, 14).unwrap();
    assert_eq!(Ifs::from_json(&ifs.to_json()).unwrap(), ifs);
}

#[test]
fn seventeen_digit_format() {
    assert_eq!(g17(0.0), "0");
    assert_eq!(g17(1.0), "1");
    assert_eq!(g17(0.1), "0.10000000000000001");
    assert_eq!(g17(SQRT_2), "1.4142135623730951");
    assert_eq!(g17(1e-7), "9.9999999999999995e-08");
    assert_eq!(g17(-2.5e20), "-2.5e+20");
    for x in [0.1, 1.0 / 3.0, SQRT_2, 6.02e23, -1e-300, 123456.789] {
        assert_eq!(g17(x).parse::<f64>().unwrap(), x);
    }
}
