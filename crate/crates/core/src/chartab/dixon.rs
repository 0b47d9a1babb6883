use serde::Serialize;

use super::Cyclotomic;
use crate::error::{Error, Result};
use crate::model::GroupTable;
use crate::perm::lcm;

/// Default cap on the number of conjugacy classes.
pub const DEFAULT_CLASS_CAP: usize = 60;

/// `#{(x, y) in C1 x C2 : x y = h}`.
pub fn class_mult_coefficient(table: &GroupTable, c1: usize, c2: usize, h: usize) -> u64 {
    table.classes()[c1]
        .members
        .iter()
        .filter(|&&x| table.class_of(table.multiply(table.inverse(x), h)) == c2)
        .count() as u64
}

/// All structure constants `a[i][j][k]` of the class algebra, indexed
/// `(i * r + j) * r + k`, with `h` the representative of class `k`.
pub fn class_structure_constants(table: &GroupTable) -> Vec<u64> {
    let r = table.classes().len();
    let mut a = vec![0u64; r * r * r];
    for (k, class) in table.classes().iter().enumerate() {
        let h = class.representative;
        for x in 0..table.size() {
            let y = table.multiply(table.inverse(x), h);
            a[(table.class_of(x) * r + table.class_of(y)) * r + k] += 1;
        }
    }
    a
}

#[derive(Debug, Clone, Serialize)]
pub struct ClassInfo {
    pub label: String,
    pub order: u64,
    pub size: usize,
    pub representative: usize,
}

/// Irreducible characters, rows sorted by degree, the trivial character
/// first, then by values (descending in the coefficient order of the
/// common cyclotomic field).
#[derive(Debug, Clone, Serialize)]
pub struct CharacterTable {
    pub group: String,
    pub group_order: usize,
    pub exponent: u64,
    pub prime: u64,
    pub classes: Vec<ClassInfo>,
    pub degrees: Vec<u64>,
    pub values: Vec<Vec<Cyclotomic>>,
}

impl CharacterTable {
    pub fn num_classes(&self) -> usize {
        self.classes.len()
    }

    pub fn value(&self, chi: usize, class: usize) -> &Cyclotomic {
        &self.values[chi][class]
    }

    /// `sum_C |C| chi_i(C) conj(chi_j(C))`.
    pub fn inner_product(&self, i: usize, j: usize) -> Cyclotomic {
        self.classes
            .iter()
            .enumerate()
            .fold(Cyclotomic::zero(self.exponent), |acc, (c, cl)| {
                acc.add(
                    &self.values[i][c]
                        .mul(&self.values[j][c].conj())
                        .scale(cl.size as i64),
                )
            })
    }

    /// `sum_chi chi(C) conj(chi(D))`.
    pub fn column_product(&self, c: usize, d: usize) -> Cyclotomic {
        self.values
            .iter()
            .fold(Cyclotomic::zero(self.exponent), |acc, row| {
                acc.add(&row[c].mul(&row[d].conj()))
            })
    }

    pub fn check_row_orthogonality(&self) -> Result<()> {
        let n = self.num_classes();
        for i in 0..n {
            for j in 0..n {
                let want = if i == j { self.group_order as i64 } else { 0 };
                if self.inner_product(i, j) != Cyclotomic::integer(1, want) {
                    return Err(Error::Internal(format!(
                        "rows {i} and {j} are not orthogonal"
                    )));
                }
            }
        }
        Ok(())
    }

    pub fn check_column_orthogonality(&self) -> Result<()> {
        let n = self.num_classes();
        for c in 0..n {
            for d in 0..n {
                let want = if c == d {
                    (self.group_order / self.classes[c].size) as i64
                } else {
                    0
                };
                if self.column_product(c, d) != Cyclotomic::integer(1, want) {
                    return Err(Error::Internal(format!(
                        "columns {c} and {d} are not orthogonal"
                    )));
                }
            }
        }
        Ok(())
    }

    pub fn check_degree_sum(&self) -> Result<()> {
        let s: u64 = self.degrees.iter().map(|d| d * d).sum();
        if s != self.group_order as u64 {
            return Err(Error::Internal(format!(
                "squared degrees sum to {s}, not {}",
                self.group_order
            )));
        }
        Ok(())
    }

    /// Checks `|C1||C2|/|G| sum_chi chi(C1) chi(C2) conj(chi(C3)) / chi(1)`
    /// against the counted structure constants, for every triple of classes
    /// (`sample = None`) or for the first `sample` classes in each slot.
    pub fn check_class_algebra(&self, table: &GroupTable, sample: Option<usize>) -> Result<()> {
        let a = class_structure_constants(table);
        let r = self.num_classes();
        let lim = sample.unwrap_or(r).min(r);
        let l = self.degrees.iter().fold(1u64, |acc, &d| lcm(acc, d));
        let g = self.group_order as i64;
        for i in 0..lim {
            for j in 0..lim {
                for k in 0..lim {
                    let mut s = Cyclotomic::zero(self.exponent);
                    for (chi, row) in self.values.iter().enumerate() {
                        let w = (l / self.degrees[chi]) as i64;
                        s = s.add(&row[i].mul(&row[j]).mul(&row[k].conj()).scale(w));
                    }
                    let sizes = (self.classes[i].size * self.classes[j].size) as i64;
                    let lhs = s.scale(sizes);
                    let rhs = a[(i * r + j) * r + k] as i64 * g * l as i64;
                    if lhs != Cyclotomic::integer(1, rhs) {
                        return Err(Error::Internal(format!(
                            "class algebra mismatch at ({i}, {j}, {k})"
                        )));
                    }
                }
            }
        }
        Ok(())
    }

    /// Plain-text table with class labels as the header.
    pub fn render(&self) -> String {
        let mut cells: Vec<Vec<String>> = Vec::new();
        let mut head = vec![String::new()];
        head.extend(self.classes.iter().map(|c| c.label.clone()));
        cells.push(head);
        let mut sizes = vec!["size".to_string()];
        sizes.extend(self.classes.iter().map(|c| c.size.to_string()));
        cells.push(sizes);
        for (i, row) in self.values.iter().enumerate() {
            let mut line = vec![format!("X.{}", i + 1)];
            line.extend(row.iter().map(|v| v.to_string()));
            cells.push(line);
        }
        let cols = cells[0].len();
        let width: Vec<usize> = (0..cols)
            .map(|c| {
                cells
                    .iter()
                    .map(|r| r[c].chars().count())
                    .max()
                    .unwrap_or(0)
            })
            .collect();
        let mut out = String::new();
        for row in cells {
            let line: Vec<String> = row
                .iter()
                .enumerate()
                .map(|(c, s)| format!("{s:>w$}", w = width[c]))
                .collect();
            out.push_str(line.join("  ").trim_end());
            out.push('\n');
        }
        out
    }
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// Smallest prime `p = 1 (mod e)` with `p > 2 sqrt(order)`.
pub fn dixon_prime(exponent: u64, order: u64) -> u64 {
    let mut p = 1 + exponent;
    while !(is_prime(p) && p * p > 4 * order) {
        p += exponent;
    }
    p
}

fn pow_mod(mut b: u64, mut e: u64, p: u64) -> u64 {
    let mut acc = 1u64;
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

fn inv_mod(a: u64, p: u64) -> u64 {
    pow_mod(a, p - 2, p)
}

fn primitive_root(p: u64) -> u64 {
    let mut factors = Vec::new();
    let mut m = p - 1;
    let mut d = 2;
    while d * d <= m {
        if m % d == 0 {
            factors.push(d);
            while m % d == 0 {
                m /= d;
            }
        }
        d += 1;
    }
    if m > 1 {
        factors.push(m);
    }
    (2..p)
        .find(|&g| factors.iter().all(|&q| pow_mod(g, (p - 1) / q, p) != 1))
        .expect("a prime has a primitive root")
}

/// Characteristic polynomial of a square matrix mod `p`, constant term
/// first (Faddeev-LeVerrier; `p` exceeds the dimension).
fn char_poly(m: &[Vec<u64>], p: u64) -> Vec<u64> {
    let n = m.len();
    let mut c = vec![0u64; n + 1];
    c[n] = 1;
    let mut mk = vec![vec![0u64; n]; n];
    for k in 1..=n {
        // mk = m * mk + c[n-k+1] I
        let mut next = vec![vec![0u64; n]; n];
        for i in 0..n {
            for j in 0..n {
                let mut s = 0u64;
                for t in 0..n {
                    s = (s + m[i][t] * mk[t][j]) % p;
                }
                next[i][j] = s;
            }
            next[i][i] = (next[i][i] + c[n - k + 1]) % p;
        }
        mk = next;
        let mut tr = 0u64;
        for i in 0..n {
            for t in 0..n {
                tr = (tr + m[i][t] * mk[t][i]) % p;
            }
        }
        c[n - k] = (p - tr * inv_mod(k as u64, p) % p) % p;
    }
    c
}

/// Basis of the null space of a matrix mod `p`, as row vectors.
fn null_space(mut m: Vec<Vec<u64>>, p: u64) -> Vec<Vec<u64>> {
    let rows = m.len();
    let cols = if rows == 0 { 0 } else { m[0].len() };
    let mut pivot_cols = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        let Some(pr) = (r..rows).find(|&i| m[i][c] != 0) else {
            continue;
        };
        m.swap(r, pr);
        let inv = inv_mod(m[r][c], p);
        for x in m[r].iter_mut() {
            *x = *x * inv % p;
        }
        for i in 0..rows {
            if i != r && m[i][c] != 0 {
                let f = m[i][c];
                for k in 0..cols {
                    m[i][k] = (m[i][k] + p - f * m[r][k] % p) % p;
                }
            }
        }
        pivot_cols.push(c);
        r += 1;
        if r == rows {
            break;
        }
    }
    let free: Vec<usize> = (0..cols).filter(|c| !pivot_cols.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![0u64; cols];
            v[f] = 1;
            for (i, &pc) in pivot_cols.iter().enumerate() {
                v[pc] = (p - m[i][f]) % p;
            }
            v
        })
        .collect()
}

/// Puts row vectors into reduced row echelon form; returns pivot columns.
fn echelon(rows: &mut Vec<Vec<u64>>, p: u64) -> Vec<usize> {
    let n = rows.len();
    let cols = rows[0].len();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == n {
            break;
        }
        let Some(pr) = (r..n).find(|&i| rows[i][c] != 0) else {
            continue;
        };
        rows.swap(r, pr);
        let inv = inv_mod(rows[r][c], p);
        for x in rows[r].iter_mut() {
            *x = *x * inv % p;
        }
        for i in 0..n {
            if i != r && rows[i][c] != 0 {
                let f = rows[i][c];
                for k in 0..cols {
                    rows[i][k] = (rows[i][k] + p - f * rows[r][k] % p) % p;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    rows.truncate(r);
    pivots
}

/// Splits an invariant subspace (rows, reduced echelon) into eigenspaces of `mat`.
fn split(space: &[Vec<u64>], mat: &[Vec<u64>], p: u64) -> Result<Vec<Vec<Vec<u64>>>> {
    let d = space.len();
    let r = mat.len();
    let mut basis = space.to_vec();
    let pivots = echelon(&mut basis, p);
    // images of basis vectors under mat, expressed in the basis via pivots
    let images: Vec<Vec<u64>> = basis
        .iter()
        .map(|b| {
            (0..r)
                .map(|i| (0..r).fold(0u64, |s, k| (s + mat[i][k] * b[k]) % p))
                .collect()
        })
        .collect();
    // restricted[t][s]: coefficient of basis t in mat * basis s
    let restricted: Vec<Vec<u64>> = (0..d)
        .map(|t| (0..d).map(|s| images[s][pivots[t]]).collect())
        .collect();
    let poly = char_poly(&restricted, p);
    let mut pieces = Vec::new();
    let mut total = 0;
    for lambda in 0..p {
        let val = poly
            .iter()
            .rev()
            .fold(0u64, |acc, &c| (acc * lambda + c) % p);
        if val != 0 {
            continue;
        }
        let mut shifted = restricted.clone();
        for (i, row) in shifted.iter_mut().enumerate() {
            row[i] = (row[i] + p - lambda) % p;
        }
        let kernel = null_space(shifted, p);
        total += kernel.len();
        let vectors: Vec<Vec<u64>> = kernel
            .iter()
            .map(|u| {
                (0..r)
                    .map(|i| (0..d).fold(0u64, |s, t| (s + u[t] * basis[t][i]) % p))
                    .collect()
            })
            .collect();
        pieces.push(vectors);
        if total == d {
            break;
        }
    }
    if total != d {
        return Err(Error::Internal(
            "class matrix is not diagonalizable over the chosen prime".into(),
        ));
    }
    Ok(pieces)
}

/// Character table by simultaneous diagonalization of the class matrices
/// over `F_p`, with values lifted exactly to cyclotomic integers through
/// eigenvalue multiplicities.
pub fn dixon_character_table(table: &GroupTable, class_cap: usize) -> Result<CharacterTable> {
    let classes = table.classes();
    let r = classes.len();
    if r > class_cap {
        return Err(Error::CapExceeded {
            what: "number of conjugacy classes",
            cap: class_cap,
        });
    }
    let n = table.size() as u64;
    let e = table.exponent();
    let p = dixon_prime(e, n);
    let z = pow_mod(primitive_root(p), (p - 1) / e, p);
    let a = class_structure_constants(table);

    // common eigenvectors of M_j[i][k] = a[i][j][k]
    let mut spaces: Vec<Vec<Vec<u64>>> = vec![(0..r)
        .map(|i| {
            let mut v = vec![0u64; r];
            v[i] = 1;
            v
        })
        .collect()];
    for j in 1..r {
        if spaces.iter().all(|s| s.len() == 1) {
            break;
        }
        let mat: Vec<Vec<u64>> = (0..r)
            .map(|i| (0..r).map(|k| a[(i * r + j) * r + k] % p).collect())
            .collect();
        let mut next = Vec::new();
        for s in spaces {
            if s.len() == 1 {
                next.push(s);
            } else {
                next.extend(split(&s, &mat, p)?);
            }
        }
        spaces = next;
    }
    if spaces.len() != r {
        return Err(Error::Internal(format!(
            "found {} joint eigenspaces, expected {r}",
            spaces.len()
        )));
    }

    let inv_class: Vec<usize> = classes
        .iter()
        .map(|c| table.class_of(table.inverse(c.representative)))
        .collect();
    let sqrt_n = (1..=n).take_while(|d| d * d <= n).last().unwrap_or(1);
    let mut rows: Vec<(u64, Vec<Cyclotomic>)> = Vec::with_capacity(r);
    for s in &spaces {
        let v = &s[0];
        if v[0] == 0 {
            return Err(Error::Internal(
                "eigenvector vanishes at the identity".into(),
            ));
        }
        let norm = inv_mod(v[0], p);
        let omega: Vec<u64> = v.iter().map(|&x| x * norm % p).collect();
        let sum = (0..r).fold(0u64, |acc, k| {
            (acc + omega[k] * omega[inv_class[k]] % p * inv_mod(classes[k].size as u64 % p, p)) % p
        });
        if sum == 0 {
            return Err(Error::Internal("degenerate central character".into()));
        }
        let d2 = n % p * inv_mod(sum, p) % p;
        let degree = (1..=sqrt_n)
            .find(|d| d * d % p == d2)
            .ok_or_else(|| Error::Internal("no degree matches the central character".into()))?;
        let chi_mod: Vec<u64> = (0..r)
            .map(|k| degree * omega[k] % p * inv_mod(classes[k].size as u64 % p, p) % p)
            .collect();
        let mut values = Vec::with_capacity(r);
        for k in 0..r {
            let o = table.class_order(k);
            let zo = pow_mod(z, e / o, p);
            let inv_o = inv_mod(o % p, p);
            let mut mult = vec![0i64; o as usize];
            for (l, m) in mult.iter_mut().enumerate() {
                let mut s = 0u64;
                for j in 0..o {
                    let chi = chi_mod[table.power_class(k, j)];
                    let root = pow_mod(zo, (o - (j * l as u64) % o) % o, p);
                    s = (s + chi * root) % p;
                }
                let count = s * inv_o % p;
                if count > degree {
                    return Err(Error::Internal(format!(
                        "eigenvalue multiplicity {count} exceeds degree {degree}"
                    )));
                }
                *m = count as i64;
            }
            values.push(Cyclotomic::from_powers(o, &mult).simplify());
        }
        rows.push((degree, values));
    }
    rows.sort_by(|(da, va), (db, vb)| {
        let trivial = |v: &[Cyclotomic]| v.iter().all(|x| x.as_integer() == Some(1));
        da.cmp(db)
            .then_with(|| trivial(vb).cmp(&trivial(va)))
            .then_with(|| {
                let key = |v: &[Cyclotomic]| -> Vec<Vec<i64>> {
                    v.iter().map(|x| x.embed(e).coeffs().to_vec()).collect()
                };
                key(vb).cmp(&key(va))
            })
    });
    let out = CharacterTable {
        group: table.name().to_string(),
        group_order: table.size(),
        exponent: e,
        prime: p,
        classes: classes
            .iter()
            .enumerate()
            .map(|(c, cl)| ClassInfo {
                label: table.class_label(c).to_string(),
                order: table.class_order(c),
                size: cl.size,
                representative: cl.representative,
            })
            .collect(),
        degrees: rows.iter().map(|(d, _)| *d).collect(),
        values: rows.into_iter().map(|(_, v)| v).collect(),
    };
    out.check_degree_sum()?;
    out.check_row_orthogonality()?;
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::perm::{Permutation, PermutationGroup};

    fn cyc(n: usize, c: &[&[u32]]) -> Permutation {
        let c: Vec<Vec<u32>> = c.iter().map(|x| x.to_vec()).collect();
        Permutation::from_cycles(n, &c).unwrap()
    }

    fn a5() -> GroupTable {
        let g = PermutationGroup::new(5, vec![cyc(5, &[&[0, 1, 2, 3, 4]]), cyc(5, &[&[2, 3, 4]])])
            .unwrap();
        GroupTable::build("A5", &g, 1000).unwrap()
    }

    #[test]
    fn prime_choice() {
        assert_eq!(dixon_prime(30, 60), 31);
        assert_eq!(dixon_prime(3, 3), 7);
        assert!(is_prime(dixon_prime(84, 168)));
    }

    #[test]
    fn char_poly_of_diagonal() {
        let m = vec![vec![2, 0], vec![0, 3]];
        // (x - 2)(x - 3) = x^2 - 5x + 6 mod 7
        assert_eq!(char_poly(&m, 7), vec![6, 2, 1]);
    }

    #[test]
    fn class_coefficients() {
        let t = a5();
        let two_a = t.class_by_label("2A").unwrap();
        assert_eq!(class_mult_coefficient(&t, two_a, two_a, 0), 15);
        // identity class: 1 iff h lies in C2
        for c in 0..t.classes().len() {
            let h = t.classes()[c].representative;
            assert_eq!(class_mult_coefficient(&t, 0, c, h), 1);
            assert_eq!(class_mult_coefficient(&t, 0, (c + 1) % 5, h), 0);
        }
    }

    #[test]
    fn a5_table() {
        let t = a5();
        let ct = dixon_character_table(&t, DEFAULT_CLASS_CAP).unwrap();
        assert_eq!(ct.degrees, vec![1, 3, 3, 4, 5]);
        ct.check_column_orthogonality().unwrap();
        ct.check_class_algebra(&t, None).unwrap();
        let three_a = t.class_by_label("3A").unwrap();
        assert!(ct.value(1, three_a).is_zero());
        assert!(ct.value(2, three_a).is_zero());
        // the degree-4 row is the natural permutation character minus 1
        for (c, cl) in t.classes().iter().enumerate() {
            let g = t.element(cl.representative);
            let fixed = (0..5).filter(|&p| g.apply(p) == p).count() as i64;
            assert_eq!(ct.value(3, c).as_integer(), Some(fixed - 1));
        }
    }

    #[test]
    fn cyclic_scaffold() {
        let g = PermutationGroup::new(3, vec![cyc(3, &[&[0, 1, 2]])]).unwrap();
        let t = GroupTable::build("C3", &g, 10).unwrap();
        let ct = dixon_character_table(&t, DEFAULT_CLASS_CAP).unwrap();
        assert_eq!(ct.degrees, vec![1, 1, 1]);
        let mut seen: Vec<Cyclotomic> = ct.values.iter().map(|row| row[1].clone()).collect();
        let roots: Vec<Cyclotomic> = (0..3).map(|k| Cyclotomic::root_of_unity(3, k)).collect();
        for r in &roots {
            let pos = seen.iter().position(|v| v == r).unwrap();
            seen.remove(pos);
        }
        ct.check_column_orthogonality().unwrap();
    }

    #[test]
    fn class_cap() {
        assert!(matches!(
            dixon_character_table(&a5(), 3),
            Err(Error::CapExceeded { .. })
        ));
    }
}
