#![allow(dead_code)]

use bianchi_core::quad::{QuadField, QuadVec2};

/// The 21 vectors listed for d = -43, as `(a, b, c, e)` for `(a + bw, c + ew)`.
pub const D43_VECTORS: [[i64; 4]; 21] = [
    [3, -3, -12, 2],
    [3, -1, -5, 0],
    [3, 0, -2, -1],
    [7, 2, 2, -4],
    [10, -1, -10, -2],
    [0, 1, 3, -1],
    [1, 0, -1, 0],
    [1, 1, 2, -1],
    [4, -1, -5, 0],
    [4, 0, -3, -1],
    [0, 1, 2, -1],
    [1, 1, 3, -1],
    [3, 0, -1, -1],
    [4, 0, -2, -1],
    [0, 0, 1, 0],
    [1, 0, 0, 0],
    [2, -1, -4, 0],
    [2, -1, -3, 0],
    [2, 1, 2, -1],
    [3, -1, -4, 0],
    [4, 0, -1, -1],
];

/// Minimal-vector index sets (1-based into `D43_VECTORS`) of the four
/// perfect-form classes for d = -43.
pub const D43_CLASSES: [&[usize]; 4] = [
    &[1, 2, 3, 4, 5, 6],
    &[6, 7, 8, 9, 10, 11],
    &[2, 3, 6, 7, 8, 12, 13, 14, 15],
    &[7, 8, 12, 13, 14, 15, 16, 17, 18, 19, 20, 21],
];

/// Facets of each class as 1-based positions within the class's list above.
pub const D43_FACETS: [&[&[usize]]; 4] = [
    &[&[1, 3, 5, 6], &[2, 4, 5, 6], &[1, 2, 3, 4], &[2, 3, 6], &[1, 4, 5]],
    &[&[3, 4, 5], &[2, 3, 4, 6], &[1, 4, 5, 6], &[1, 2, 3, 5], &[1, 2, 6]],
    &[
        &[1, 2, 3, 6, 7, 8],
        &[1, 2, 9],
        &[5, 6, 8],
        &[1, 5, 8, 9],
        &[2, 4, 7, 9],
        &[4, 5, 9],
        &[3, 4, 5, 6],
        &[3, 4, 7],
    ],
    &[
        &[1, 3, 4, 9, 10, 12],
        &[2, 5, 6, 9, 11, 12],
        &[4, 5, 7, 8, 10, 11],
        &[6, 7, 11],
        &[1, 2, 3, 6, 7, 8],
        &[1, 2, 12],
        &[3, 8, 10],
        &[4, 5, 9],
    ],
];

pub fn d43() -> QuadField {
    QuadField::new(-43).unwrap()
}

pub fn d43_class_vectors(class: usize) -> Vec<QuadVec2> {
    D43_CLASSES[class]
        .iter()
        .map(|&i| QuadVec2::from_coords(d43(), D43_VECTORS[i - 1]))
        .collect()
}
