//! Bottom-up evaluation of a parity recurrence over a nice tree decomposition.
//!
//! A table maps `(coloring, accumulators)` to a GF(2) polynomial in the weight variable.
//! Colorings are mixed-radix integers over the sorted bag (digit `i` ↔ `i`-th smallest vertex).
//! Problems describe their recurrences in the backward form used on paper; the runner
//! evaluates them forward over the nonzero entries only.

use rustc_hash::FxHashMap;

use super::poly;
use crate::decomposition::{NiceTreeDecomposition, NodeKind};

pub const MAX_ACC: usize = 4;

/// Accumulator and weight increments attached to a transition.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Delta {
    pub acc: [u32; MAX_ACC],
    pub w: usize,
}

impl Delta {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn weight(w: usize) -> Self {
        Delta { acc: [0; MAX_ACC], w }
    }

    /// Adds `x` to accumulator `i`.
    pub fn plus(mut self, i: usize, x: u32) -> Self {
        self.acc[i] += x;
        self
    }

    pub fn add(mut self, other: Delta) -> Self {
        for i in 0..MAX_ACC {
            self.acc[i] += other.acc[i];
        }
        self.w += other.w;
        self
    }
}

/// Range of one accumulator: values `0..=max`; a saturating accumulator clamps at `max`
/// instead of discarding the entry.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct AccSpec {
    pub max: usize,
    pub saturate: bool,
}

impl AccSpec {
    pub fn upto(max: usize) -> Self {
        AccSpec { max, saturate: false }
    }

    pub fn capped(max: usize) -> Self {
        AccSpec { max, saturate: true }
    }
}

/// How two child colorings combine at a join node.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum JoinRule {
    /// Both children carry the parent coloring.
    Identical,
    /// Each state splits into `(key, bit)`; keys must agree and bits combine by OR
    /// (covering product over the bit positions).
    Covering,
    /// As `Covering` but bits must be disjoint (subset convolution over the bit positions).
    Disjoint,
    /// Digit-wise combination table given by [`Recurrence::combine`].
    Pairwise,
}

/// A CountC dynamic program in backward form.
pub trait Recurrence {
    /// Number of states per bag vertex.
    fn alphabet(&self) -> usize;

    /// Accumulator axes (at most [`MAX_ACC`]).
    fn accumulators(&self) -> Vec<AccSpec>;

    /// Largest weight that can matter; larger weights are truncated away.
    fn max_weight(&self) -> usize;

    /// Introduce-vertex: states `α` the new vertex may take, with the increments applied.
    fn introduce(&self, v: usize, out: &mut Vec<(u8, Delta)>);

    /// Introduce-edge: for parent states `(su, sv)` of the endpoints, the child states and
    /// increments that contribute, i.e. `A_x(s) = Σ A_y(acc − δ, s[u→a_u, v→a_v])`.
    fn edge(&self, edge: usize, u: usize, v: usize, su: u8, sv: u8, out: &mut Vec<(u8, u8, Delta)>);

    /// Forget: increments with which a vertex in state `s` is summed out (empty if disallowed).
    fn forget(&self, v: usize, s: u8, out: &mut Vec<Delta>);

    fn join_rule(&self) -> JoinRule;

    /// `(key, bit)` of a state, for [`JoinRule::Covering`] and [`JoinRule::Disjoint`].
    fn split(&self, _s: u8) -> (u8, bool) {
        unreachable!("split is only used by bitwise join rules")
    }

    /// Inverse of [`Recurrence::split`].
    fn compose(&self, _key: u8, _bit: bool) -> Option<u8> {
        None
    }

    /// Parent state from two child states, for [`JoinRule::Pairwise`].
    fn combine(&self, _a: u8, _b: u8) -> Option<u8> {
        None
    }

    /// Amount counted in both children for a bag vertex in (parent) state `s`; subtracted at joins.
    fn overlap(&self, _v: usize, _s: u8) -> Delta {
        Delta::zero()
    }
}

/// Structural record of one evaluation.
#[derive(Clone, Debug, Default)]
pub struct DpStats {
    pub alphabet: usize,
    /// `(|bag|, coloring-axis length)` for every node.
    pub axes: Vec<(usize, u64)>,
    /// Largest number of simultaneously live `(coloring, accumulators)` rows.
    pub peak_entries: usize,
    /// `peak_entries · (max_weight + 1)`.
    pub peak_cells: usize,
}

/// Root table: one weight polynomial per accumulator vector.
#[derive(Clone, Debug)]
pub struct DpOutput {
    pub root: Vec<(Vec<usize>, Vec<u64>)>,
    pub stats: DpStats,
}

impl DpOutput {
    /// Polynomial at the given accumulator vector (zero if absent).
    pub fn at(&self, acc: &[usize]) -> Option<&[u64]> {
        self.root.iter().find(|(a, _)| a == acc).map(|(_, p)| p.as_slice())
    }
}

struct AccLayout {
    specs: Vec<AccSpec>,
    strides: Vec<usize>,
    count: usize,
}

impl AccLayout {
    fn new(specs: Vec<AccSpec>) -> Self {
        assert!(specs.len() <= MAX_ACC, "too many accumulators");
        let mut strides = Vec::with_capacity(specs.len());
        let mut count = 1usize;
        for s in &specs {
            strides.push(count);
            count *= s.max + 1;
        }
        AccLayout { specs, strides, count }
    }

    fn decode(&self, idx: usize) -> [usize; MAX_ACC] {
        let mut a = [0; MAX_ACC];
        for (i, s) in self.specs.iter().enumerate() {
            a[i] = (idx / self.strides[i]) % (s.max + 1);
        }
        a
    }

    fn encode(&self, a: &[usize; MAX_ACC]) -> usize {
        (0..self.specs.len()).map(|i| a[i] * self.strides[i]).sum()
    }

    fn clamp(&self, a: &mut [usize; MAX_ACC]) -> bool {
        for (i, s) in self.specs.iter().enumerate() {
            if a[i] > s.max {
                if s.saturate {
                    a[i] = s.max;
                } else {
                    return false;
                }
            }
        }
        true
    }

    fn add(&self, idx: usize, d: &Delta) -> Option<usize> {
        let mut a = self.decode(idx);
        for i in 0..self.specs.len() {
            a[i] += d.acc[i] as usize;
        }
        self.clamp(&mut a).then(|| self.encode(&a))
    }

    fn join(&self, x: usize, y: usize, ov: &Delta) -> Option<usize> {
        let a = self.decode(x);
        let b = self.decode(y);
        let mut c = [0; MAX_ACC];
        for i in 0..self.specs.len() {
            c[i] = (a[i] + b[i]).checked_sub(ov.acc[i] as usize)?;
        }
        self.clamp(&mut c).then(|| self.encode(&c))
    }

    fn vector(&self, idx: usize) -> Vec<usize> {
        self.decode(idx)[..self.specs.len()].to_vec()
    }
}

struct Table {
    bag: Vec<usize>,
    index: FxHashMap<u64, u32>,
    keys: Vec<u64>,
    data: Vec<u64>,
    words: usize,
}

impl Table {
    fn new(bag: Vec<usize>, words: usize) -> Self {
        Table { bag, index: FxHashMap::default(), keys: Vec::new(), data: Vec::new(), words }
    }

    fn slot(&mut self, key: u64) -> &mut [u64] {
        let words = self.words;
        let next = self.keys.len() as u32;
        let i = *self.index.entry(key).or_insert(next) as usize;
        if i == self.keys.len() {
            self.keys.push(key);
            self.data.resize(self.data.len() + words, 0);
        }
        &mut self.data[i * words..(i + 1) * words]
    }

    fn rows(&self) -> impl Iterator<Item = (u64, &[u64])> {
        self.keys
            .iter()
            .enumerate()
            .map(move |(i, &k)| (k, &self.data[i * self.words..(i + 1) * self.words]))
            .filter(|(_, p)| !poly::is_zero(p))
    }

    fn len(&self) -> usize {
        self.keys.len()
    }
}

/// Evaluates `rec` over `td`. `pins[v] = Some(s)` restricts vertex `v` to state `s` everywhere.
pub fn run<R: Recurrence + ?Sized>(rec: &R, td: &NiceTreeDecomposition, pins: Option<&[Option<u8>]>) -> DpOutput {
    let q = rec.alphabet();
    assert!((2..=255).contains(&q), "alphabet size out of range");
    let layout = AccLayout::new(rec.accumulators());
    let words = poly::words_for(rec.max_weight());
    let max_bag = td.max_bag();
    let pow: Vec<u64> = (0..=max_bag + 1).map(|i| (q as u64).pow(i as u32)).collect();
    let nacc = layout.count as u64;
    let mut tables: Vec<Option<Table>> = (0..td.nodes.len()).map(|_| None).collect();
    let mut stats = DpStats { alphabet: q, ..Default::default() };
    let mut live = 0usize;
    let mut scratch = Vec::new();
    let mut buf_intro = Vec::new();
    let mut buf_edge = Vec::new();
    let mut buf_forget = Vec::new();

    for (x, node) in td.nodes.iter().enumerate() {
        let axis = pow[node.bag.len()];
        stats.axes.push((node.bag.len(), axis));
        let mut out = Table::new(node.bag.clone(), words);
        match node.kind {
            NodeKind::Leaf => {
                out.slot(0)[0] = 1;
            }
            NodeKind::IntroduceVertex(v) => {
                let child = tables[node.children[0]].take().expect("child evaluated");
                live -= child.len();
                let p = child.bag.partition_point(|&y| y < v);
                buf_intro.clear();
                rec.introduce(v, &mut buf_intro);
                if let Some(pin) = pins.and_then(|ps| ps[v]) {
                    buf_intro.retain(|&(s, _)| s == pin);
                }
                for (key, src) in child.rows() {
                    let (c, a) = (key / nacc, (key % nacc) as usize);
                    let low = c % pow[p];
                    let high = c / pow[p];
                    for &(s, d) in &buf_intro {
                        if let Some(na) = layout.add(a, &d) {
                            let nc = low + s as u64 * pow[p] + high * pow[p + 1];
                            poly::xor_shifted(out.slot(nc * nacc + na as u64), src, d.w);
                        }
                    }
                }
            }
            NodeKind::IntroduceEdge { edge, u, v } => {
                let child = tables[node.children[0]].take().expect("child evaluated");
                live -= child.len();
                let pu = child.bag.binary_search(&u).expect("endpoint in bag");
                let pv = child.bag.binary_search(&v).expect("endpoint in bag");
                // forward table: child digits (a_u, a_v) → parent digits and increments
                let mut fwd: Vec<Vec<(u8, u8, Delta)>> = vec![Vec::new(); q * q];
                for su in 0..q as u8 {
                    for sv in 0..q as u8 {
                        buf_edge.clear();
                        rec.edge(edge, u, v, su, sv, &mut buf_edge);
                        for &(au, av, d) in &buf_edge {
                            fwd[au as usize * q + av as usize].push((su, sv, d));
                        }
                    }
                }
                for (key, src) in child.rows() {
                    let (c, a) = (key / nacc, (key % nacc) as usize);
                    let du = (c / pow[pu]) % q as u64;
                    let dv = (c / pow[pv]) % q as u64;
                    let base = c - du * pow[pu] - dv * pow[pv];
                    for &(su, sv, d) in &fwd[du as usize * q + dv as usize] {
                        if let Some(na) = layout.add(a, &d) {
                            let nc = base + su as u64 * pow[pu] + sv as u64 * pow[pv];
                            poly::xor_shifted(out.slot(nc * nacc + na as u64), src, d.w);
                        }
                    }
                }
            }
            NodeKind::Forget(v) => {
                let child = tables[node.children[0]].take().expect("child evaluated");
                live -= child.len();
                let p = child.bag.binary_search(&v).expect("forgotten vertex in bag");
                let lists: Vec<Vec<Delta>> = (0..q as u8)
                    .map(|s| {
                        buf_forget.clear();
                        rec.forget(v, s, &mut buf_forget);
                        buf_forget.clone()
                    })
                    .collect();
                for (key, src) in child.rows() {
                    let (c, a) = (key / nacc, (key % nacc) as usize);
                    let d = (c / pow[p]) % q as u64;
                    let nc = c % pow[p] + (c / pow[p + 1]) * pow[p];
                    for delta in &lists[d as usize] {
                        if let Some(na) = layout.add(a, delta) {
                            poly::xor_shifted(out.slot(nc * nacc + na as u64), src, delta.w);
                        }
                    }
                }
            }
            NodeKind::Join => {
                let y = tables[node.children[0]].take().expect("child evaluated");
                let z = tables[node.children[1]].take().expect("child evaluated");
                live -= y.len() + z.len();
                let ctx = JoinCtx { rec, layout: &layout, q, pow: &pow, nacc, bag: &node.bag };
                match rec.join_rule() {
                    JoinRule::Identical => ctx.identical(&y, &z, &mut out, &mut scratch),
                    JoinRule::Pairwise => ctx.pairwise(&y, &z, &mut out, &mut scratch),
                    JoinRule::Covering => ctx.bitwise(&y, &z, &mut out, false, &mut scratch),
                    JoinRule::Disjoint => ctx.bitwise(&y, &z, &mut out, true, &mut scratch),
                }
            }
        }
        debug_assert!(out.keys.iter().all(|k| k / nacc < axis), "coloring outside its axis");
        live += out.len();
        stats.peak_entries = stats.peak_entries.max(live);
        tables[x] = Some(out);
    }
    stats.peak_cells = stats.peak_entries * (rec.max_weight() + 1);
    let root = tables[td.root].take().expect("root evaluated");
    let result = root.rows().map(|(k, p)| (layout.vector((k % nacc) as usize), p.to_vec())).collect();
    DpOutput { root: result, stats }
}

struct JoinCtx<'a, R: ?Sized> {
    rec: &'a R,
    layout: &'a AccLayout,
    q: usize,
    pow: &'a [u64],
    nacc: u64,
    bag: &'a [usize],
}

type Groups = FxHashMap<u64, Vec<(usize, usize)>>;

impl<R: Recurrence + ?Sized> JoinCtx<'_, R> {
    fn digits(&self, c: u64) -> Vec<u8> {
        (0..self.bag.len()).map(|i| ((c / self.pow[i]) % self.q as u64) as u8).collect()
    }

    fn overlap(&self, digits: &[u8]) -> Delta {
        let mut d = Delta::zero();
        for (i, &s) in digits.iter().enumerate() {
            d = d.add(self.rec.overlap(self.bag[i], s));
        }
        d
    }

    /// Rows grouped by coloring: `coloring → [(acc index, row index)]`.
    fn group(&self, t: &Table) -> Groups {
        let mut g: Groups = FxHashMap::default();
        for (i, &k) in t.keys.iter().enumerate() {
            if !poly::is_zero(&t.data[i * t.words..(i + 1) * t.words]) {
                g.entry(k / self.nacc).or_default().push(((k % self.nacc) as usize, i));
            }
        }
        g
    }

    fn multiply_rows(
        &self,
        y: &Table,
        ys: &[(usize, usize)],
        z: &Table,
        zs: &[(usize, usize)],
        target: u64,
        ov: &Delta,
        out: &mut Table,
        scratch: &mut Vec<u64>,
    ) {
        let w = y.words;
        for &(a1, r1) in ys {
            let p1 = &y.data[r1 * w..(r1 + 1) * w];
            for &(a2, r2) in zs {
                if let Some(na) = self.layout.join(a1, a2, ov) {
                    let p2 = &z.data[r2 * w..(r2 + 1) * w];
                    poly::mul_shift_into(out.slot(target * self.nacc + na as u64), p1, p2, ov.w, scratch);
                }
            }
        }
    }

    fn identical(&self, y: &Table, z: &Table, out: &mut Table, scratch: &mut Vec<u64>) {
        let gy = self.group(y);
        let gz = self.group(z);
        for (&c, ys) in &gy {
            if let Some(zs) = gz.get(&c) {
                let ov = self.overlap(&self.digits(c));
                self.multiply_rows(y, ys, z, zs, c, &ov, out, scratch);
            }
        }
    }

    fn pairwise(&self, y: &Table, z: &Table, out: &mut Table, scratch: &mut Vec<u64>) {
        let q = self.q;
        let mut compat: Vec<Vec<(u8, u8)>> = vec![Vec::new(); q];
        for a in 0..q as u8 {
            for b in 0..q as u8 {
                if let Some(c) = self.rec.combine(a, b) {
                    compat[a as usize].push((b, c));
                }
            }
        }
        let gy = self.group(y);
        let gz = self.group(z);
        let t = self.bag.len();
        for (&cy, ys) in &gy {
            let dy = self.digits(cy);
            if dy.iter().any(|&a| compat[a as usize].is_empty()) {
                continue;
            }
            // odometer over the compatible partner digits
            let mut choice = vec![0usize; t];
            loop {
                let mut cz = 0u64;
                let mut ct = 0u64;
                let mut dt = Vec::with_capacity(t);
                for i in 0..t {
                    let (b, c) = compat[dy[i] as usize][choice[i]];
                    cz += b as u64 * self.pow[i];
                    ct += c as u64 * self.pow[i];
                    dt.push(c);
                }
                if let Some(zs) = gz.get(&cz) {
                    let ov = self.overlap(&dt);
                    self.multiply_rows(y, ys, z, zs, ct, &ov, out, scratch);
                }
                let mut i = 0;
                while i < t {
                    choice[i] += 1;
                    if choice[i] < compat[dy[i] as usize].len() {
                        break;
                    }
                    choice[i] = 0;
                    i += 1;
                }
                if i == t {
                    break;
                }
            }
        }
    }

    /// Covering (`disjoint = false`) or disjoint-union (`disjoint = true`) combination of the
    /// bit parts, via zeta/Möbius transforms over GF(2)[w] (ranked for the disjoint case).
    fn bitwise(&self, y: &Table, z: &Table, out: &mut Table, disjoint: bool, scratch: &mut Vec<u64>) {
        let q = self.q as u64;
        let t = self.bag.len();
        let words = y.words;
        // key coloring: every digit with its bit cleared
        let key_of = |c: u64| -> (u64, u32) {
            let mut k = 0u64;
            let mut bits = 0u32;
            for i in 0..t {
                let s = ((c / self.pow[i]) % q) as u8;
                let (key, bit) = self.rec.split(s);
                let base = self.rec.compose(key, false).expect("every key has a clear-bit state");
                k += base as u64 * self.pow[i];
                if bit {
                    bits |= 1 << i;
                }
            }
            (k, bits)
        };
        // per key coloring, per child: rows as (bag bitmask, acc, row)
        let mut groups: FxHashMap<u64, [Vec<(u32, usize, usize)>; 2]> = FxHashMap::default();
        for (side, tab) in [y, z].into_iter().enumerate() {
            for (i, &k) in tab.keys.iter().enumerate() {
                if poly::is_zero(&tab.data[i * words..(i + 1) * words]) {
                    continue;
                }
                let (kc, bits) = key_of(k / self.nacc);
                groups.entry(kc).or_insert_with(|| [Vec::new(), Vec::new()])[side].push((
                    bits,
                    (k % self.nacc) as usize,
                    i,
                ));
            }
        }
        for (kc, [ys, zs]) in &groups {
            if ys.is_empty() || zs.is_empty() {
                continue;
            }
            let kd = self.digits(*kc);
            // positions that can carry a set bit
            let free: Vec<usize> = (0..t)
                .filter(|&i| self.rec.compose(self.rec.split(kd[i]).0, true).is_some())
                .collect();
            let r = free.len();
            let ov = self.overlap(&kd);
            let compress = |bits: u32| -> usize {
                free.iter().enumerate().filter(|(_, &p)| bits >> p & 1 == 1).map(|(j, _)| 1 << j).sum()
            };
            let ranks = if disjoint { r + 1 } else { 1 };
            let build = |rows: &[(u32, usize, usize)], tab: &Table| -> (Vec<usize>, Vec<u64>) {
                let mut accs: Vec<usize> = rows.iter().map(|&(_, a, _)| a).collect();
                accs.sort_unstable();
                accs.dedup();
                let na = accs.len();
                let mut dense = vec![0u64; ranks * (1 << r) * na * words];
                for &(bits, a, row) in rows {
                    let tset = compress(bits);
                    let rank = if disjoint { tset.count_ones() as usize } else { 0 };
                    let ai = accs.binary_search(&a).expect("acc listed");
                    let off = ((rank << r | tset) * na + ai) * words;
                    for (d, s) in dense[off..off + words].iter_mut().zip(&tab.data[row * words..(row + 1) * words]) {
                        *d ^= s;
                    }
                }
                zeta(&mut dense, ranks, r, na * words);
                (accs, dense)
            };
            let (ay, fy) = build(ys, y);
            let (az, fz) = build(zs, z);
            // target accumulators
            let mut targets: Vec<usize> = Vec::new();
            let mut pair_target = vec![usize::MAX; ay.len() * az.len()];
            for (i, &a1) in ay.iter().enumerate() {
                for (j, &a2) in az.iter().enumerate() {
                    if let Some(na) = self.layout.join(a1, a2, &ov) {
                        let ti = match targets.iter().position(|&x| x == na) {
                            Some(p) => p,
                            None => {
                                targets.push(na);
                                targets.len() - 1
                            }
                        };
                        pair_target[i * az.len() + j] = ti;
                    }
                }
            }
            if targets.is_empty() {
                continue;
            }
            let nt = targets.len();
            let mut h = vec![0u64; ranks * (1 << r) * nt * words];
            for set in 0..(1usize << r) {
                for r1 in 0..ranks {
                    for r2 in 0..ranks - r1 {
                        for i in 0..ay.len() {
                            let off1 = ((r1 << r | set) * ay.len() + i) * words;
                            let p1 = &fy[off1..off1 + words];
                            if poly::is_zero(p1) {
                                continue;
                            }
                            for j in 0..az.len() {
                                let ti = pair_target[i * az.len() + j];
                                if ti == usize::MAX {
                                    continue;
                                }
                                let off2 = ((r2 << r | set) * az.len() + j) * words;
                                let p2 = &fz[off2..off2 + words];
                                if poly::is_zero(p2) {
                                    continue;
                                }
                                let off = (((r1 + r2) << r | set) * nt + ti) * words;
                                poly::mul_shift_into(&mut h[off..off + words], p1, p2, ov.w, scratch);
                            }
                        }
                    }
                }
            }
            // Möbius over GF(2) coincides with zeta
            zeta(&mut h, ranks, r, nt * words);
            for set in 0..(1usize << r) {
                let rank = if disjoint { set.count_ones() as usize } else { 0 };
                let mut c = *kc;
                for (j, &p) in free.iter().enumerate() {
                    if set >> j & 1 == 1 {
                        let key = self.rec.split(kd[p]).0;
                        let s = self.rec.compose(key, true).expect("free position");
                        c = c - kd[p] as u64 * self.pow[p] + s as u64 * self.pow[p];
                    }
                }
                for (ti, &na) in targets.iter().enumerate() {
                    let off = ((rank << r | set) * nt + ti) * words;
                    let src = &h[off..off + words];
                    if !poly::is_zero(src) {
                        poly::xor_shifted(out.slot(c * self.nacc + na as u64), src, 0);
                    }
                }
            }
        }
    }
}

/// In-place subset-sum transform over GF(2) on `ranks` layers of `2^r` blocks of `block` words.
fn zeta(data: &mut [u64], ranks: usize, r: usize, block: usize) {
    for layer in 0..ranks {
        let base = layer * (1 << r) * block;
        for bit in 0..r {
            for set in 0..(1usize << r) {
                if set >> bit & 1 == 1 {
                    let from = base + (set ^ (1 << bit)) * block;
                    let to = base + set * block;
                    let (lo, hi) = data.split_at_mut(to);
                    for (d, s) in hi[..block].iter_mut().zip(&lo[from..from + block]) {
                        *d ^= s;
                    }
                }
            }
        }
    }
}
