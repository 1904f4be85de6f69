//! Extended keys (shortened and punctured positions), efficiency, and
//! per-block code selection.

use rand::Rng;

use crate::bits::BitBlock;
use crate::error::{Error, Result};
use crate::ldpc::CodePool;
use crate::rng::shuffled_indices;

/// Role of one extended-key position.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum PositionRole {
    Key,
    Shortened,
    Punctured,
}

/// Partition of the `n` extended-key positions into key, shortened and
/// punctured positions, derived from a seed both parties share.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExtensionLayout {
    seed: u64,
    roles: Vec<PositionRole>,
    key: Vec<usize>,
    shortened: Vec<usize>,
    punctured: Vec<usize>,
}

impl ExtensionLayout {
    pub fn n(&self) -> usize {
        self.roles.len()
    }
    pub fn n_key(&self) -> usize {
        self.key.len()
    }
    pub fn n_shortened(&self) -> usize {
        self.shortened.len()
    }
    pub fn n_punctured(&self) -> usize {
        self.punctured.len()
    }
    pub fn seed(&self) -> u64 {
        self.seed
    }
    pub fn key_positions(&self) -> &[usize] {
        &self.key
    }
    pub fn shortened_positions(&self) -> &[usize] {
        &self.shortened
    }
    pub fn punctured_positions(&self) -> &[usize] {
        &self.punctured
    }
    #[inline]
    pub fn role(&self, position: usize) -> PositionRole {
        self.roles[position]
    }
}

/// Shuffles `0..n` with the shared seed; the first `n_s` positions are
/// shortened, the next `n_p` punctured, the rest carry key bits.
pub fn plan_extension(n: usize, n_s: usize, n_p: usize, seed: u64) -> Result<ExtensionLayout> {
    if n_s + n_p > n {
        return Err(Error::argument(format!(
            "n_s + n_p = {} exceeds frame length {n}",
            n_s + n_p
        )));
    }
    let perm = shuffled_indices(n, seed);
    let mut roles = vec![PositionRole::Key; n];
    for &p in &perm[..n_s] {
        roles[p] = PositionRole::Shortened;
    }
    for &p in &perm[n_s..n_s + n_p] {
        roles[p] = PositionRole::Punctured;
    }
    let collect = |role| (0..n).filter(|&i| roles[i] == role).collect::<Vec<_>>();
    Ok(ExtensionLayout {
        seed,
        key: collect(PositionRole::Key),
        shortened: collect(PositionRole::Shortened),
        punctured: collect(PositionRole::Punctured),
        roles,
    })
}

/// Builds one party's extended key. Key positions receive `block` in order,
/// shortened positions `shortened_value`, and punctured positions fresh bits
/// from `puncture_rng`, which must be private to the calling party.
pub fn extend_key<R: Rng + ?Sized>(
    block: &BitBlock,
    layout: &ExtensionLayout,
    shortened_value: bool,
    puncture_rng: &mut R,
) -> Result<BitBlock> {
    if block.len() != layout.n_key() {
        return Err(Error::argument(format!(
            "key block has {} bits, layout expects {}",
            block.len(),
            layout.n_key()
        )));
    }
    let mut out = BitBlock::zeros(layout.n());
    for (&pos, bit) in layout.key.iter().zip(block.iter()) {
        out.set(pos, bit);
    }
    if shortened_value {
        for &pos in &layout.shortened {
            out.set(pos, true);
        }
    }
    for &pos in &layout.punctured {
        out.set(pos, puncture_rng.random::<bool>());
    }
    Ok(out)
}

/// Binary entropy `h(q)` in bits, with `h(0) = h(1) = 0`.
pub fn binary_entropy(q: f64) -> Result<f64> {
    if !(0.0..=1.0).contains(&q) {
        return Err(Error::argument(format!("probability {q} outside [0, 1]")));
    }
    if q == 0.0 || q == 1.0 {
        return Ok(0.0);
    }
    Ok(-q * q.log2() - (1.0 - q) * (1.0 - q).log2())
}

/// Reconciliation efficiency `(m - n_p + n_add) / ((n - n_s - n_p) h(q))`.
pub fn efficiency(m: usize, n: usize, n_s: usize, n_p: usize, n_add: usize, q: f64) -> Result<f64> {
    if n_s + n_p >= n {
        return Err(Error::argument(format!(
            "no key bits left: n={n}, n_s={n_s}, n_p={n_p}"
        )));
    }
    let h = binary_entropy(q)?;
    if h == 0.0 {
        return Err(Error::argument(format!("binary entropy vanishes at q={q}")));
    }
    let disclosed = m as f64 - n_p as f64 + n_add as f64;
    Ok(disclosed / ((n - n_s - n_p) as f64 * h))
}

/// Code and shortening/puncturing split chosen for one block.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CodeSelection {
    /// Index into the pool's code list.
    pub code_index: usize,
    pub rate: f64,
    pub m: usize,
    pub n_s: usize,
    pub n_p: usize,
    /// Predicted efficiency at the prior QBER.
    pub efficiency: f64,
}

/// Picks the code and `n_p ∈ [0, n_d]` minimizing `|f - 1|` with
/// `f = (m - n_p) / ((n - n_d) h(q_prev))`. Ties prefer the smaller `m`, then
/// the smaller `n_p`.
pub fn select_code(pool: &CodePool, q_prev: f64, n_d: usize) -> Result<CodeSelection> {
    if !(q_prev > 0.0 && q_prev < 0.5) {
        return Err(Error::argument(format!("q_prev={q_prev} outside (0, 0.5)")));
    }
    let n = pool.n();
    if n_d >= n {
        return Err(Error::argument(format!("n_d={n_d} must be below n={n}")));
    }
    let denom = (n - n_d) as f64 * binary_entropy(q_prev)?;
    let mut best: Option<(f64, CodeSelection)> = None;
    for (code_index, code) in pool.codes().iter().enumerate() {
        let m = code.matrix.m();
        for n_p in 0..=n_d.min(m) {
            let f = (m - n_p) as f64 / denom;
            let gap = (f - 1.0).abs();
            let better = match &best {
                None => true,
                Some((g, sel)) => gap < *g || (gap == *g && (m, n_p) < (sel.m, sel.n_p)),
            };
            if better {
                let sel = CodeSelection {
                    code_index,
                    rate: code.rate,
                    m,
                    n_s: n_d - n_p,
                    n_p,
                    efficiency: f,
                };
                best = Some((gap, sel));
            }
        }
    }
    Ok(best.expect("pool is non-empty").1)
}
