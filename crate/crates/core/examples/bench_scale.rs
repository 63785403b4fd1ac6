// Scratch benchmark: nullity paths with nontrivial kernels, and f64 eigensolve cost.
use l2tree::exactmath::{fraction_free_nullity, integer_nullity, SparseIntRows};
use std::time::Instant;

struct Rng(u64);
impl Rng {
    fn next(&mut self) -> u64 {
        let mut x = self.0;
        x ^= x << 13; x ^= x >> 7; x ^= x << 17;
        self.0 = x; x
    }
}

// bipartite 3-regular: union of 3 random perfect matchings between two sides
fn bipartite_adj(n: usize, seed: u64) -> SparseIntRows {
    let mut rng = Rng(seed | 1);
    let mut rows = vec![std::collections::BTreeMap::<usize, i64>::new(); 2 * n];
    for _ in 0..3 {
        let mut perm: Vec<usize> = (0..n).collect();
        for i in (1..n).rev() {
            let j = (rng.next() as usize) % (i + 1);
            perm.swap(i, j);
        }
        for u in 0..n {
            let v = n + perm[u];
            *rows[u].entry(v).or_insert(0) += 1;
            *rows[v].entry(u).or_insert(0) += 1;
        }
    }
    rows.into_iter().map(|r| r.into_iter().collect()).collect()
}

fn main() {
    for n in [250usize, 500, 1000] {
        let adj = bipartite_adj(n, 0xABCD + n as u64);
        let t = Instant::now();
        let k = integer_nullity(2 * n, &adj);
        println!("bipartite hybrid   2n={}: nullity={k}  {:?}", 2 * n, t.elapsed());
        if 2 * n <= 500 {
            let t = Instant::now();
            let k2 = fraction_free_nullity(2 * n, &adj);
            println!("bipartite bareiss  2n={}: nullity={k2}  {:?}", 2 * n, t.elapsed());
            assert_eq!(k, k2);
        }
    }
    // dense f64 symmetric eigensolve cost estimate: naive Householder tridiag + QL
    for n in [500usize, 1000, 2000] {
        let mut a = vec![0.0f64; n * n];
        let mut rng = Rng(42 + n as u64);
        for i in 0..n {
            for j in 0..=i {
                let v = ((rng.next() % 7) as f64) - 3.0;
                a[i * n + j] = v;
                a[j * n + i] = v;
            }
        }
        let t = Instant::now();
        let evs = l2tree_bench_tridiag(&mut a, n);
        println!("tridiag+ql n={n}: {:?} (ev[0]={:.3})", t.elapsed(), evs[0]);
    }
}

// quick-and-dirty Householder tridiagonalization (values only) + QL with implicit shifts
fn l2tree_bench_tridiag(a: &mut [f64], n: usize) -> Vec<f64> {
    let mut d = vec![0.0; n];
    let mut e = vec![0.0; n];
    for i in (1..n).rev() {
        let l = i;
        let mut h = 0.0;
        if l > 1 {
            let scale: f64 = (0..l).map(|k| a[i * n + k].abs()).sum();
            if scale == 0.0 {
                e[i] = a[i * n + l - 1];
            } else {
                for k in 0..l {
                    a[i * n + k] /= scale;
                    h += a[i * n + k] * a[i * n + k];
                }
                let mut f = a[i * n + l - 1];
                let g = if f >= 0.0 { -h.sqrt() } else { h.sqrt() };
                e[i] = scale * g;
                h -= f * g;
                a[i * n + l - 1] = f - g;
                f = 0.0;
                for j in 0..l {
                    let mut g = 0.0;
                    for k in 0..=j {
                        g += a[j * n + k] * a[i * n + k];
                    }
                    for k in j + 1..l {
                        g += a[k * n + j] * a[i * n + k];
                    }
                    e[j] = g / h;
                    f += e[j] * a[i * n + j];
                }
                let hh = f / (h + h);
                for j in 0..l {
                    let f = a[i * n + j];
                    let g = e[j] - hh * f;
                    e[j] = g;
                    for k in 0..=j {
                        a[j * n + k] -= f * e[k] + g * a[i * n + k];
                    }
                }
            }
        } else {
            e[i] = a[i * n + l - 1];
        }
        d[i] = h;
    }
    d[0] = 0.0;
    e[0] = 0.0;
    for i in 0..n {
        d[i] = a[i * n + i];
    }
    // QL with implicit shifts on (d, e)
    for i in 1..n {
        e[i - 1] = e[i];
    }
    e[n - 1] = 0.0;
    for l in 0..n {
        let mut iter = 0;
        loop {
            let mut m = l;
            while m + 1 < n {
                let dd = d[m].abs() + d[m + 1].abs();
                if e[m].abs() <= f64::EPSILON * dd {
                    break;
                }
                m += 1;
            }
            if m == l {
                break;
            }
            iter += 1;
            if iter > 50 {
                break;
            }
            let mut g = (d[l + 1] - d[l]) / (2.0 * e[l]);
            let mut r = (g * g + 1.0).sqrt();
            g = d[m] - d[l] + e[l] / (g + if g >= 0.0 { r.abs() } else { -r.abs() });
            let (mut s, mut c) = (1.0, 1.0);
            let mut p = 0.0;
            for i in (l..m).rev() {
                let mut f = s * e[i];
                let b = c * e[i];
                r = (f * f + g * g).sqrt();
                e[i + 1] = r;
                if r == 0.0 {
                    d[i + 1] -= p;
                    e[m] = 0.0;
                    break;
                }
                s = f / r;
                c = g / r;
                g = d[i + 1] - p;
                r = (d[i] - g) * s + 2.0 * c * b;
                p = s * r;
                d[i + 1] = g + p;
                g = c * r - b;
                f = d[i + 1];
                let _ = f;
            }
            if r == 0.0 && m > l {
                continue;
            }
            d[l] -= p;
            e[l] = g;
            e[m] = 0.0;
        }
    }
    d.sort_by(|x, y| x.partial_cmp(y).unwrap());
    d
}
