//! Subsets of the hypercube `{0,1}^d` stored as bitmasks over vertices.
//!
//! Vertex `(x_1, ..., x_d)` has index `sum_i x_i 2^(i-1)`; bit `v` of the mask
//! is set iff vertex `v` belongs to the set.

use std::fmt;

use crate::error::{domain, Error, Result};

/// Largest supported dimension.
pub const MAX_DIM: u32 = 16;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct HypercubeSubset {
    d: u32,
    words: Vec<u64>,
}

fn word_count(d: u32) -> usize {
    (1usize << d).div_ceil(64)
}

impl HypercubeSubset {
    pub fn empty(d: u32) -> Result<Self> {
        if d == 0 || d > MAX_DIM {
            return domain(format!("dimension {d} outside 1..={MAX_DIM}"));
        }
        Ok(HypercubeSubset {
            d,
            words: vec![0; word_count(d)],
        })
    }

    pub fn from_vertices(d: u32, vertices: impl IntoIterator<Item = u32>) -> Result<Self> {
        let mut s = Self::empty(d)?;
        for v in vertices {
            if v >= s.vertex_count() {
                return domain(format!("vertex {v} does not fit dimension {d}"));
            }
            s.insert(v);
        }
        Ok(s)
    }

    /// The set whose mask, restricted to the first 64 vertices, is `mask`.
    pub fn from_mask_u64(d: u32, mask: u64) -> Result<Self> {
        let mut s = Self::empty(d)?;
        let n = s.vertex_count();
        if n < 64 && mask >> n != 0 {
            return domain(format!("mask {mask:#x} has bits beyond 2^{d} vertices"));
        }
        s.words[0] = mask;
        Ok(s)
    }

    pub fn full(d: u32) -> Result<Self> {
        Self::from_vertices(d, 0..(1u32 << d.min(MAX_DIM)))
    }

    /// Vertices obtained from `base` by varying the coordinates in `free`.
    pub fn subcube(d: u32, free: u32, base: u32) -> Result<Self> {
        let base = base & !free;
        let mut s = Self::empty(d)?;
        if free >= s.vertex_count() || base >= s.vertex_count() {
            return domain("subcube coordinates exceed the dimension");
        }
        let mut sub = free;
        loop {
            s.insert(base | sub);
            if sub == 0 {
                break;
            }
            sub = (sub - 1) & free;
        }
        Ok(s)
    }

    /// Parses a hexadecimal mask (optional `0x` prefix, most significant digit
    /// first), as printed by [`HypercubeSubset::to_hex`].
    pub fn from_hex(d: u32, hex: &str) -> Result<Self> {
        let mut s = Self::empty(d)?;
        let digits = hex.trim();
        let digits = digits
            .strip_prefix("0x")
            .or_else(|| digits.strip_prefix("0X"))
            .unwrap_or(digits);
        if digits.is_empty() {
            return Err(Error::Parse("empty hex mask".into()));
        }
        for (pos, c) in digits.chars().rev().enumerate() {
            let nibble = c
                .to_digit(16)
                .ok_or_else(|| Error::Parse(format!("invalid hex digit {c:?}")))?;
            for b in 0..4u32 {
                if nibble >> b & 1 == 1 {
                    let v = (pos as u64) * 4 + u64::from(b);
                    if v >= u64::from(s.vertex_count()) {
                        return Err(Error::Parse(format!(
                            "mask sets vertex {v}, beyond 2^{d} vertices"
                        )));
                    }
                    s.insert(v as u32);
                }
            }
        }
        Ok(s)
    }

    /// Parses the set-file format: one vertex per line as a string of `d`
    /// characters over `{0,1}`, the `i`-th character being `x_i`. Blank lines
    /// and lines starting with `#` are ignored; `d` comes from the first vertex.
    pub fn parse_set_file(text: &str) -> Result<Self> {
        let mut d = None;
        let mut vertices = Vec::new();
        for (lineno, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let width = line.chars().count() as u32;
            let dim = *d.get_or_insert(width);
            if width != dim {
                return Err(Error::Parse(format!(
                    "line {}: vertex has {width} coordinates, expected {dim}",
                    lineno + 1
                )));
            }
            let mut v = 0u32;
            for (i, c) in line.chars().enumerate() {
                match c {
                    '0' => {}
                    '1' if i < 32 => v |= 1 << i,
                    _ => {
                        return Err(Error::Parse(format!(
                            "line {}: unexpected character {c:?}",
                            lineno + 1
                        )))
                    }
                }
            }
            vertices.push(v);
        }
        let d = d.ok_or_else(|| Error::Parse("set file contains no vertices".into()))?;
        Self::from_vertices(d, vertices)
    }

    pub fn dim(&self) -> u32 {
        self.d
    }

    pub fn vertex_count(&self) -> u32 {
        1 << self.d
    }

    pub fn insert(&mut self, v: u32) {
        self.words[(v / 64) as usize] |= 1 << (v % 64);
    }

    pub fn remove(&mut self, v: u32) {
        self.words[(v / 64) as usize] &= !(1 << (v % 64));
    }

    pub fn contains(&self, v: u32) -> bool {
        v < self.vertex_count() && self.words[(v / 64) as usize] >> (v % 64) & 1 == 1
    }

    pub fn len(&self) -> u64 {
        self.words.iter().map(|w| u64::from(w.count_ones())).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn words(&self) -> &[u64] {
        &self.words
    }

    /// Member vertices in increasing order.
    pub fn vertices(&self) -> Vec<u32> {
        (0..self.vertex_count())
            .filter(|&v| self.contains(v))
            .collect()
    }

    pub fn is_subset_of(&self, other: &HypercubeSubset) -> bool {
        self.d == other.d
            && self
                .words
                .iter()
                .zip(&other.words)
                .all(|(a, b)| a & !b == 0)
    }

    /// `A x B` inside `{0,1}^(d1+d2)`: the coordinates of `B` follow those of `A`.
    pub fn product(&self, other: &HypercubeSubset) -> Result<Self> {
        let d = self.d + other.d;
        let shift = self.d;
        let a = self.vertices();
        Self::from_vertices(
            d,
            other
                .vertices()
                .into_iter()
                .flat_map(|b| a.iter().map(move |&x| x | (b << shift))),
        )
    }

    /// Image under the coordinate map `x_i -> x_{perm[i]}` (0-based).
    pub fn permute(&self, perm: &[u32]) -> Result<Self> {
        let mut seen = vec![false; self.d as usize];
        if perm.len() != self.d as usize {
            return domain("permutation length differs from the dimension");
        }
        for &p in perm {
            if p >= self.d || std::mem::replace(&mut seen[p as usize], true) {
                return domain("not a permutation of the coordinates");
            }
        }
        Self::from_vertices(
            self.d,
            self.vertices().into_iter().map(|v| {
                perm.iter()
                    .enumerate()
                    .fold(0, |acc, (i, &p)| acc | ((v >> i & 1) << p))
            }),
        )
    }

    /// Image under flipping every coordinate set in `flips`.
    pub fn flip(&self, flips: u32) -> Result<Self> {
        let flips = flips & (self.vertex_count() - 1);
        Self::from_vertices(self.d, self.vertices().into_iter().map(|v| v ^ flips))
    }

    /// Mask in hexadecimal, most significant digit first, no prefix.
    pub fn to_hex(&self) -> String {
        let digits = self.vertex_count().div_ceil(4) as usize;
        let mut out = String::with_capacity(digits);
        for pos in (0..digits).rev() {
            let bit = pos * 4;
            let nibble = (self.words[bit / 64] >> (bit % 64)) & 0xf;
            out.push(char::from_digit(nibble as u32, 16).unwrap());
        }
        out
    }

    /// The vertex as a `d`-character string, `x_1` first.
    pub fn vertex_string(&self, v: u32) -> String {
        (0..self.d)
            .map(|i| if v >> i & 1 == 1 { '1' } else { '0' })
            .collect()
    }
}

impl fmt::Debug for HypercubeSubset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "HypercubeSubset(d={}, mask=0x{})", self.d, self.to_hex())
    }
}

impl fmt::Display for HypercubeSubset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let vs: Vec<String> = self
            .vertices()
            .into_iter()
            .map(|v| self.vertex_string(v))
            .collect();
        write!(f, "{{{}}}", vs.join(","))
    }
}
