//! Built-in models used by the self-test, the acceptance suite, and the CLI.

use crate::model::{CuModel, FiniteTable};

/// `{0}`.
pub fn trivial() -> CuModel {
    table(vec![vec![0]], vec![vec![true]])
}

/// `{0, inf}`.
pub fn two_point() -> CuModel {
    truncated_nbar(0)
}

/// `{0, a, inf}` with `a + a = inf`.
pub fn three_point() -> CuModel {
    truncated_nbar(1)
}

/// `{0, 1, ..., m, inf}` with saturating addition: sums above `m` become `inf`.
/// Index `m + 1` is `inf`.
pub fn truncated_nbar(m: usize) -> CuModel {
    let n = m + 2;
    let inf = m + 1;
    let add =
        (0..n).map(|i| (0..n).map(|j| if i == inf || j == inf || i + j > m { inf } else { i + j }).collect()).collect();
    let leq = (0..n).map(|i| (0..n).map(|j| i <= j).collect()).collect();
    table(add, leq)
}

/// Coordinatewise product; the pair `(i, j)` has index `i * |b| + j`.
pub fn product(a: &CuModel, b: &CuModel) -> CuModel {
    let (ta, tb) = (a.table().expect("finite table"), b.table().expect("finite table"));
    let (na, nb) = (ta.n(), tb.n());
    let n = na * nb;
    let split = |x: usize| (x / nb, x % nb);
    let add = (0..n)
        .map(|x| {
            (0..n)
                .map(|y| {
                    let ((xa, xb), (ya, yb)) = (split(x), split(y));
                    ta.sum(xa, ya) * nb + tb.sum(xb, yb)
                })
                .collect()
        })
        .collect();
    let leq = (0..n)
        .map(|x| {
            (0..n)
                .map(|y| {
                    let ((xa, xb), (ya, yb)) = (split(x), split(y));
                    ta.le(xa, ya) && tb.le(xb, yb)
                })
                .collect()
        })
        .collect();
    table(add, leq)
}

/// `{0, a, b, inf}`: every sum of nonzero elements is `inf`, and `a`, `b` are
/// incomparable. It satisfies O1–O5 but not O6: `a <= b + b`, yet the only element
/// below both `a` and `b` is `0`.
pub fn broken_o6() -> CuModel {
    let add = (0..4)
        .map(|i| {
            (0..4)
                .map(|j| {
                    if i == 0 {
                        j
                    } else if j == 0 {
                        i
                    } else {
                        3
                    }
                })
                .collect()
        })
        .collect();
    let leq = (0..4).map(|i| (0..4).map(|j| i == j || i == 0 || j == 3).collect()).collect();
    table(add, leq)
}

/// Valid finite fixtures, at most ten elements each.
pub fn finite_fixtures() -> Vec<(String, CuModel)> {
    let t2 = two_point();
    let t3 = three_point();
    let n2 = truncated_nbar(2);
    vec![
        ("trivial".into(), trivial()),
        ("two_point".into(), t2.clone()),
        ("three_point".into(), t3.clone()),
        ("nbar_upto_2".into(), n2.clone()),
        ("nbar_upto_5".into(), truncated_nbar(5)),
        ("two_point_x_two_point".into(), product(&t2, &t2)),
        ("two_point_x_three_point".into(), product(&t2, &t3)),
        ("nbar_upto_2_x_two_point".into(), product(&n2, &t2)),
        ("three_point_x_three_point".into(), product(&t3, &t3)),
    ]
}

/// `N̄^k` for `k <= 3` and monotone chains for `k <= 4`.
pub fn effective_fixtures() -> Vec<(String, CuModel)> {
    let mut out: Vec<(String, CuModel)> =
        (1..=3).map(|k| (format!("nbar_power_{k}"), CuModel::nbar_power(k))).collect();
    out.extend((1..=4).map(|k| (format!("monotone_chain_{k}"), CuModel::monotone_chain(k))));
    out
}

pub fn all_fixtures() -> Vec<(String, CuModel)> {
    let mut out = finite_fixtures();
    out.extend(effective_fixtures());
    out
}

pub fn by_name(name: &str) -> Option<CuModel> {
    if name == "broken_o6" {
        return Some(broken_o6());
    }
    all_fixtures().into_iter().find(|(n, _)| n == name).map(|(_, m)| m)
}

fn table(add: Vec<Vec<usize>>, leq: Vec<Vec<bool>>) -> CuModel {
    CuModel::FiniteTable(FiniteTable::new(add, leq).expect("fixture is a valid table"))
}

/// Every valid table on `n` elements (commutative monoid with identity 0, compatible
/// partial order with minimum 0). Labelled, so isomorphic copies repeat.
pub fn enumerate_tables(n: usize) -> Vec<CuModel> {
    assert!((1..=4).contains(&n), "enumeration is only meant for tiny tables");
    let pairs: Vec<(usize, usize)> = (1..n).flat_map(|i| (i..n).map(move |j| (i, j))).collect();
    let rels: Vec<(usize, usize)> = (1..n).flat_map(|i| (1..n).filter(move |&j| j != i).map(move |j| (i, j))).collect();
    let mut out = Vec::new();
    for code in 0..n.pow(pairs.len() as u32) {
        let mut add: Vec<Vec<usize>> = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| {
                        if i == 0 {
                            j
                        } else if j == 0 {
                            i
                        } else {
                            0
                        }
                    })
                    .collect()
            })
            .collect();
        let mut c = code;
        for &(i, j) in &pairs {
            add[i][j] = c % n;
            add[j][i] = c % n;
            c /= n;
        }
        for mask in 0..1u64 << rels.len() {
            let mut leq: Vec<Vec<bool>> = (0..n).map(|i| (0..n).map(|j| i == j || i == 0).collect()).collect();
            for (b, &(i, j)) in rels.iter().enumerate() {
                leq[i][j] = mask >> b & 1 == 1;
            }
            if let Ok(t) = FiniteTable::new(add.clone(), leq) {
                out.push(CuModel::FiniteTable(t));
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::Element;

    #[test]
    fn fixtures_load_and_round_trip() {
        for (name, m) in all_fixtures() {
            assert_eq!(CuModel::load(&m.save()).unwrap(), m, "{name}");
        }
        let _ = broken_o6();
    }

    #[test]
    fn truncated_nbar_saturates() {
        let m = truncated_nbar(2);
        let t = m.table().unwrap();
        assert_eq!(t.sum(1, 1), 2);
        assert_eq!(t.sum(1, 2), 3);
        assert_eq!(t.stabilization_index(1), 3);
        assert_eq!(m.infinity_multiple(&Element::Index(1)).unwrap(), Element::Index(3));
    }

    #[test]
    fn product_sizes() {
        for (name, m) in finite_fixtures() {
            assert!(m.table().unwrap().n() <= 10, "{name}");
        }
        let p = product(&three_point(), &three_point());
        assert_eq!(p.table().unwrap().n(), 9);
        assert_eq!(p.top(), Some(Element::Index(8)));
    }
}
