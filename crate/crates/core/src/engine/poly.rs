//! GF(2) polynomials in the weight variable, stored as little-endian `u64` bitsets.
//! Bit `w` of a polynomial is the parity of partial solutions of total weight `w`.

/// Number of words needed for weights `0..=max_weight`.
pub fn words_for(max_weight: usize) -> usize {
    max_weight / 64 + 1
}

pub fn is_zero(p: &[u64]) -> bool {
    p.iter().all(|&x| x == 0)
}

pub fn get_bit(p: &[u64], i: usize) -> bool {
    i / 64 < p.len() && (p[i / 64] >> (i % 64)) & 1 == 1
}

pub fn flip_bit(p: &mut [u64], i: usize) {
    if i / 64 < p.len() {
        p[i / 64] ^= 1 << (i % 64);
    }
}

/// `dst ^= src · x^shift`, truncated to the length of `dst`.
pub fn xor_shifted(dst: &mut [u64], src: &[u64], shift: usize) {
    let ws = shift / 64;
    let bs = shift % 64;
    if ws >= dst.len() {
        return;
    }
    if bs == 0 {
        for (i, &s) in src.iter().enumerate() {
            match dst.get_mut(i + ws) {
                Some(d) => *d ^= s,
                None => break,
            }
        }
    } else {
        for (i, &s) in src.iter().enumerate() {
            if s == 0 {
                continue;
            }
            let j = i + ws;
            if j >= dst.len() {
                break;
            }
            dst[j] ^= s << bs;
            if j + 1 < dst.len() {
                dst[j + 1] ^= s >> (64 - bs);
            }
        }
    }
}

/// `dst ^= src / x^shift` (the low `shift` bits of `src` are discarded).
pub fn xor_shifted_down(dst: &mut [u64], src: &[u64], shift: usize) {
    let ws = shift / 64;
    let bs = shift % 64;
    for (i, d) in dst.iter_mut().enumerate() {
        let j = i + ws;
        if j >= src.len() {
            break;
        }
        let mut v = src[j] >> bs;
        if bs != 0 && j + 1 < src.len() {
            v |= src[j + 1] << (64 - bs);
        }
        *d ^= v;
    }
}

/// Full carry-less product `out ^= a · b`; `out` must hold `a.len() + b.len()` words.
pub fn clmul_into(out: &mut [u64], a: &[u64], b: &[u64]) {
    debug_assert!(out.len() >= a.len() + b.len());
    #[cfg(target_arch = "x86_64")]
    {
        if std::arch::is_x86_feature_detected!("pclmulqdq") {
            // SAFETY: the feature was detected at runtime.
            unsafe { clmul_hw(out, a, b) };
            return;
        }
    }
    clmul_soft(out, a, b);
}

/// `dst ^= (a · b) / x^shift`, truncated to the length of `dst`. `scratch` is reused storage.
pub fn mul_shift_into(dst: &mut [u64], a: &[u64], b: &[u64], shift: usize, scratch: &mut Vec<u64>) {
    // only product words that can land in dst matter
    let need = (dst.len() + shift / 64 + 1).min(a.len() + b.len());
    let a = &a[..a.len().min(need)];
    let b = &b[..b.len().min(need)];
    scratch.clear();
    scratch.resize(a.len() + b.len(), 0);
    clmul_into(scratch, a, b);
    xor_shifted_down(dst, scratch, shift);
}

fn clmul_soft(out: &mut [u64], a: &[u64], b: &[u64]) {
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            if y == 0 {
                continue;
            }
            let (lo, hi) = clmul64(x, y);
            out[i + j] ^= lo;
            out[i + j + 1] ^= hi;
        }
    }
}

/// Portable 64×64 → 128 carry-less product.
pub fn clmul64(a: u64, b: u64) -> (u64, u64) {
    let mut lo = 0u64;
    let mut hi = 0u64;
    for i in 0..64 {
        if (b >> i) & 1 == 1 {
            lo ^= a << i;
            if i > 0 {
                hi ^= a >> (64 - i);
            }
        }
    }
    (lo, hi)
}

#[cfg(target_arch = "x86_64")]
#[target_feature(enable = "pclmulqdq,sse2")]
unsafe fn clmul_hw(out: &mut [u64], a: &[u64], b: &[u64]) {
    use std::arch::x86_64::*;
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        let xa = _mm_set_epi64x(0, x as i64);
        for (j, &y) in b.iter().enumerate() {
            if y == 0 {
                continue;
            }
            let r = _mm_clmulepi64_si128(xa, _mm_set_epi64x(0, y as i64), 0x00);
            let lo = _mm_cvtsi128_si64(r) as u64;
            let hi = _mm_cvtsi128_si64(_mm_unpackhi_epi64(r, r)) as u64;
            out[i + j] ^= lo;
            out[i + j + 1] ^= hi;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn soft_and_dispatch_agree() {
        let a = [0x8000_0000_0000_0001u64, 0x1234_5678_9abc_def0];
        let b = [0xffff_0000_ffff_0000u64, 3];
        let mut x = vec![0; 4];
        let mut y = vec![0; 4];
        clmul_soft(&mut x, &a, &b);
        clmul_into(&mut y, &a, &b);
        assert_eq!(x, y);
    }

    #[test]
    fn shifts_round_trip() {
        let src = [0b1011u64, 1 << 63];
        let mut up = vec![0; 3];
        xor_shifted(&mut up, &src, 70);
        let mut down = vec![0; 2];
        xor_shifted_down(&mut down, &up, 70);
        assert_eq!(down, vec![0b1011, 0]);
        assert!(get_bit(&up, 73));
    }
}
