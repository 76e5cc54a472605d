//! Independent recomputations of Hom/Ext dimensions and reflection
//! candidates, checked against the library.

use qrep::fixtures::{self, PaperFixtures};
use qrep::linalg::{FieldTag, Matrix};
use qrep::quiver::{Arrow, DimVector, Quiver};
use qrep::rep::{end_dim, ext_cocycle_basis, hom_dim, Representation};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const BIG_PRIME: u64 = 1_000_000_007;

fn field(p: u64) -> FieldTag {
    FieldTag::prime(p).unwrap()
}

/// Arrow matrices of `x` as residues mod `p`.
fn residues(x: &Representation, p: u64) -> Vec<Vec<Vec<u64>>> {
    let x = x.convert(field(p)).unwrap();
    x.maps()
        .iter()
        .map(|m| {
            (0..m.rows())
                .map(|r| (0..m.cols()).map(|c| u64::from(m.get(r, c).residue().unwrap())).collect())
                .collect()
        })
        .collect()
}

fn rank_mod(mut rows: Vec<Vec<u64>>, p: u64) -> usize {
    let width = rows.first().map_or(0, Vec::len);
    let mut rank = 0;
    for col in 0..width {
        let Some(pivot) = (rank..rows.len()).find(|&r| rows[r][col] % p != 0) else {
            continue;
        };
        rows.swap(rank, pivot);
        let inv = pow_mod(rows[rank][col], p - 2, p);
        for r in 0..rows.len() {
            if r != rank && rows[r][col] != 0 {
                let factor = rows[r][col] * inv % p;
                for c in col..width {
                    let sub = factor * rows[rank][c] % p;
                    rows[r][c] = (rows[r][c] + p - sub) % p;
                }
            }
        }
        rank += 1;
    }
    rank
}

fn pow_mod(mut b: u64, mut e: u64, p: u64) -> u64 {
    let mut acc = 1;
    b %= p;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * b % p;
        }
        b = b * b % p;
        e >>= 1;
    }
    acc
}

/// `(dim Hom(x, y), dim Ext¹(x, y))` over `F_p`, from the rank of the
/// commuting-square map applied to unit matrices.
fn hom_ext_mod(x: &Representation, y: &Representation, p: u64) -> (usize, usize) {
    let q = x.quiver();
    let xm = residues(x, p);
    let ym = residues(y, p);
    let n = q.vertex_count();
    let mut eq_offset = Vec::new();
    let mut eqs = 0;
    for a in q.arrows() {
        eq_offset.push(eqs);
        eqs += y.dim(a.head) * x.dim(a.tail);
    }
    // One column of the map per unit matrix E_{rc} at vertex v.
    let mut columns = Vec::new();
    for v in 1..=n {
        for r in 0..y.dim(v) {
            for c in 0..x.dim(v) {
                let mut col = vec![0u64; eqs];
                for (k, a) in q.arrows().iter().enumerate() {
                    let cols = x.dim(a.tail);
                    if a.head == v {
                        // E_{rc} x_a: row r is row c of x_a.
                        for j in 0..cols {
                            let at = eq_offset[k] + r * cols + j;
                            col[at] = (col[at] + xm[k][c][j]) % p;
                        }
                    }
                    if a.tail == v {
                        // -y_a E_{rc}: column c is minus column r of y_a.
                        for i in 0..y.dim(a.head) {
                            let at = eq_offset[k] + i * cols + c;
                            col[at] = (col[at] + p - ym[k][i][r]) % p;
                        }
                    }
                }
                columns.push(col);
            }
        }
    }
    let rank = rank_mod(columns.clone(), p);
    (columns.len() - rank, eqs - rank)
}

/// Counts homomorphisms over `F_2` by listing every tuple of vertex maps.
fn brute_force_hom_count_f2(x: &Representation, y: &Representation) -> u64 {
    let q = x.quiver();
    let xm = residues(x, 2);
    let ym = residues(y, 2);
    let sizes: Vec<usize> = (1..=q.vertex_count()).map(|v| y.dim(v) * x.dim(v)).collect();
    let total: usize = sizes.iter().sum();
    assert!(total <= 20, "too many unknowns for brute force");
    let mut count = 0;
    for bits in 0u64..(1 << total) {
        let mut offset = 0;
        let mut phi = Vec::new();
        for v in 1..=q.vertex_count() {
            let (r, c) = (y.dim(v), x.dim(v));
            let m: Vec<Vec<u64>> = (0..r)
                .map(|i| (0..c).map(|j| (bits >> (offset + i * c + j)) & 1).collect())
                .collect();
            offset += r * c;
            phi.push(m);
        }
        let commutes = q.arrows().iter().enumerate().all(|(k, a)| {
            let (t, h) = (a.tail - 1, a.head - 1);
            (0..y.dim(a.head)).all(|i| {
                (0..x.dim(a.tail)).all(|j| {
                    let lhs: u64 = (0..x.dim(a.head)).map(|l| phi[h][i][l] * xm[k][l][j]).sum();
                    let rhs: u64 = (0..y.dim(a.tail)).map(|l| ym[k][i][l] * phi[t][l][j]).sum();
                    lhs % 2 == rhs % 2
                })
            })
        });
        if commutes {
            count += 1;
        }
    }
    count
}

fn random_rep(rng: &mut ChaCha8Rng, q: &Quiver, f: FieldTag, max_dim: i64) -> Representation {
    let dims: Vec<i64> = (0..q.vertex_count()).map(|_| rng.gen_range(0..=max_dim)).collect();
    let dims = DimVector::from(dims);
    let maps = q
        .arrows()
        .iter()
        .map(|a| {
            let (r, c) = (dims.at(a.head) as usize, dims.at(a.tail) as usize);
            let rows: Vec<Vec<i64>> = (0..r).map(|_| (0..c).map(|_| rng.gen_range(-2..=2)).collect()).collect();
            if r == 0 {
                Matrix::zeros(f, 0, c)
            } else {
                Matrix::from_int_rows(f, &rows)
            }
        })
        .collect();
    Representation::new(q.clone(), f, dims, maps).unwrap()
}

fn random_quiver(rng: &mut ChaCha8Rng) -> Quiver {
    let n = rng.gen_range(1..=4);
    let mut arrows = Vec::new();
    if n > 1 {
        for k in 0..rng.gen_range(0..=4) {
            let tail = rng.gen_range(1..=n);
            let mut head = rng.gen_range(1..=n);
            while head == tail {
                head = rng.gen_range(1..=n);
            }
            arrows.push(Arrow {
                label: format!("a{k}"),
                tail,
                head,
            });
        }
    }
    Quiver::new(n, arrows).unwrap()
}

#[test]
fn fixture_hom_dimensions_match_the_rank_oracle() {
    let fx = PaperFixtures::load();
    let pairs = [
        ("End X_alpha", &fx.x_alpha, &fx.x_alpha, 9),
        ("Hom(X_alpha, X_beta1)", &fx.x_alpha, &fx.x_beta1, 4),
        ("Hom(X_beta1, X_alpha)", &fx.x_beta1, &fx.x_alpha, 2),
        ("Hom(X_beta1, X_gamma1)", &fx.x_beta1, &fx.x_gamma1, 1),
        ("End X_beta1", &fx.x_beta1, &fx.x_beta1, 1),
    ];
    for (name, x, y, expected) in pairs {
        for p in [2, 3, BIG_PRIME] {
            let (hom, ext) = hom_ext_mod(x, y, p);
            assert_eq!(hom, expected, "{name} over F{p}");
            let xf = x.convert(field(p)).unwrap();
            let yf = y.convert(field(p)).unwrap();
            assert_eq!(hom_dim(&xf, &yf).unwrap(), hom, "{name} over F{p}");
            assert_eq!(ext_cocycle_basis(&xf, &yf).unwrap().dim(), ext, "{name} over F{p}");
        }
        assert_eq!(hom_dim(x, y).unwrap(), expected, "{name} over Q");
    }
    // Ext¹(X_alpha, X_beta1) is one-dimensional, Ext¹(X_beta1, X_alpha) vanishes.
    assert_eq!(hom_ext_mod(&fx.x_alpha, &fx.x_beta1, BIG_PRIME).1, 1);
    assert_eq!(hom_ext_mod(&fx.x_beta1, &fx.x_alpha, BIG_PRIME).1, 0);
}

#[test]
fn x_alpha_endomorphisms_over_three_fields() {
    let fx = PaperFixtures::load();
    for f in [FieldTag::Rationals, field(2), field(3)] {
        assert_eq!(end_dim(&fx.x_alpha.convert(f).unwrap()).unwrap(), 9, "over {f}");
    }
}

#[test]
fn brute_force_hom_count_over_f2() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let mut compared = 0;
    while compared < 60 {
        let q = random_quiver(&mut rng);
        let x = random_rep(&mut rng, &q, field(2), 2);
        let y = random_rep(&mut rng, &q, field(2), 2);
        let unknowns: i64 = x.dims().iter().zip(y.dims().iter()).map(|(a, b)| a * b).sum();
        if unknowns > 14 {
            continue;
        }
        let count = brute_force_hom_count_f2(&x, &y);
        assert_eq!(count, 1 << hom_dim(&x, &y).unwrap(), "{x:?} {y:?}");
        compared += 1;
    }
}

#[test]
fn rank_oracle_on_random_representations() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for _ in 0..80 {
        let q = random_quiver(&mut rng);
        let p = [2, 5, 7][rng.gen_range(0..3)];
        let x = random_rep(&mut rng, &q, field(p), 3);
        let y = random_rep(&mut rng, &q, field(p), 3);
        let (hom, ext) = hom_ext_mod(&x, &y, p);
        assert_eq!(hom_dim(&x, &y).unwrap(), hom);
        assert_eq!(ext_cocycle_basis(&x, &y).unwrap().dim(), ext);
    }
}

/// Relabels vertices by `perm` (vertex `v` becomes `perm[v - 1]`).
fn permuted(x: &Representation, perm: &[usize]) -> Representation {
    let q = x.quiver();
    let arrows = q
        .arrows()
        .iter()
        .map(|a| Arrow {
            label: a.label.clone(),
            tail: perm[a.tail - 1],
            head: perm[a.head - 1],
        })
        .collect();
    let q2 = Quiver::new(q.vertex_count(), arrows).unwrap();
    let mut dims = vec![0; q.vertex_count()];
    for v in 1..=q.vertex_count() {
        dims[perm[v - 1] - 1] = x.dims().at(v);
    }
    Representation::new(q2, x.field(), DimVector::from(dims), x.maps().to_vec()).unwrap()
}

#[test]
fn hom_dimensions_do_not_depend_on_vertex_order() {
    let fx = PaperFixtures::load();
    let perm = [8, 7, 6, 5, 4, 3, 2, 1];
    let a = permuted(&fx.x_alpha, &perm);
    let b = permuted(&fx.x_beta1, &perm);
    let g = permuted(&fx.x_gamma1, &perm);
    assert_eq!(end_dim(&a).unwrap(), 9);
    assert_eq!(hom_dim(&a, &b).unwrap(), 4);
    assert_eq!(hom_dim(&b, &a).unwrap(), 2);
    assert_eq!(hom_dim(&b, &g).unwrap(), 1);
}

fn euler(q: &Quiver, a: &[i64], b: &[i64]) -> i64 {
    let diag: i64 = a.iter().zip(b).map(|(x, y)| x * y).sum();
    diag - q.arrows().iter().map(|ar| a[ar.tail - 1] * b[ar.head - 1]).sum::<i64>()
}

/// Positive real root test by descending along the largest vertex with a
/// positive pairing.
fn is_real_root_oracle(q: &Quiver, b: &[i64]) -> bool {
    if euler(q, b, b) != 1 {
        return false;
    }
    let n = b.len();
    let mut v = b.to_vec();
    loop {
        if v.iter().any(|&c| c < 0) {
            return false;
        }
        if v.iter().sum::<i64>() == 1 {
            return true;
        }
        let step = (0..n).rev().find_map(|i| {
            let mut e = vec![0; n];
            e[i] = 1;
            let pairing = euler(q, &v, &e) + euler(q, &e, &v);
            (pairing > 0).then_some((i, pairing))
        });
        match step {
            Some((i, pairing)) => v[i] -= pairing,
            None => return false,
        }
    }
}

/// Every real root strictly below `a` (other than `a` and 0) with both
/// pairings against `a` nonnegative, by listing the box `0 <= b <= a`.
fn candidates_by_box(q: &Quiver, a: &[i64]) -> Vec<DimVector> {
    let mut out = Vec::new();
    let mut b = vec![0i64; a.len()];
    loop {
        let mut i = 0;
        while i < a.len() && b[i] == a[i] {
            b[i] = 0;
            i += 1;
        }
        if i == a.len() {
            break;
        }
        b[i] += 1;
        if b.as_slice() != a
            && euler(q, a, &b) >= 0
            && euler(q, &b, a) >= 0
            && is_real_root_oracle(q, &b)
        {
            out.push(DimVector::from(b.clone()));
        }
    }
    out.sort();
    out
}

#[test]
fn reflection_candidates_match_box_enumeration() {
    let q = PaperFixtures::load().quiver;
    let alpha = fixtures::ALPHA;
    let by_box = candidates_by_box(&q, &alpha);
    assert_eq!(by_box, {
        let mut b = fixtures::betas();
        b.sort();
        b
    });
    assert_eq!(q.reflection_candidates(&DimVector::from(alpha)).unwrap(), by_box);

    let k2 = Quiver::kronecker(2);
    assert_eq!(candidates_by_box(&k2, &[1, 2]), vec![DimVector::from([0, 1])]);
    assert_eq!(
        k2.reflection_candidates(&DimVector::from([1, 2])).unwrap(),
        vec![DimVector::from([0, 1])]
    );
}

#[test]
fn real_root_test_agrees_with_descent_oracle() {
    let q = PaperFixtures::load().quiver;
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for _ in 0..2000 {
        let v: Vec<i64> = (0..8).map(|_| rng.gen_range(0..=4)).collect();
        if v.iter().all(|&c| c == 0) {
            continue;
        }
        assert_eq!(
            q.is_positive_real_root(&DimVector::from(v.clone())).unwrap(),
            is_real_root_oracle(&q, &v),
            "{v:?}"
        );
    }
}
