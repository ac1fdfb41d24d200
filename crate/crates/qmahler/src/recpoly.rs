//! The six recursively defined polynomial families R_k, S_k, P_k, Q_k, Y_k,
//! Z_k.
//!
//! Each family is defined by a recursion whose inhomogeneous part doubles as
//! the initial value: the recursive sum runs over odd offsets j = 3, 5, ...
//! <= k+1 (empty for k <= 1), so no explicit base case is needed. All
//! coefficients are rational. Parity alternates with the index: R, P, Y, Z
//! have odd parity at even k (degree k+1), while S and Q have odd parity at
//! odd k (degree k).
//!
//! Construction is memoized behind a lock; entries are immutable once built,
//! so rebuilding a lower index is idempotent.

use crate::error::{Error, Result};
use crate::numbers::{Parity, ParityPolynomial, Rational, SqrtThree};
use std::collections::HashMap;
use std::sync::RwLock;

/// Family selector.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Family {
    R,
    S,
    P,
    Q,
    Y,
    Z,
}

impl Family {
    pub const ALL: [Family; 6] = [
        Family::R,
        Family::S,
        Family::P,
        Family::Q,
        Family::Y,
        Family::Z,
    ];

    pub fn as_str(&self) -> &'static str {
        match self {
            Family::R => "R",
            Family::S => "S",
            Family::P => "P",
            Family::Q => "Q",
            Family::Y => "Y",
            Family::Z => "Z",
        }
    }

    pub fn parse(s: &str) -> Option<Family> {
        match s {
            "R" | "r" => Some(Family::R),
            "S" | "s" => Some(Family::S),
            "P" | "p" => Some(Family::P),
            "Q" | "q" => Some(Family::Q),
            "Y" | "y" => Some(Family::Y),
            "Z" | "z" => Some(Family::Z),
            _ => None,
        }
    }

    /// Scale base of the recursive sum: 3^{j-1} for the theta-scaled
    /// families (R, S, Y), 6^{j-1} for the delta-scaled ones (P, Q, Z).
    fn recursion_base(&self) -> i64 {
        match self {
            Family::R | Family::S | Family::Y => 3,
            Family::P | Family::Q | Family::Z => 6,
        }
    }

    /// Expected parity at index k.
    pub fn parity_at(&self, k: u32) -> Parity {
        let odd_at_even_k = matches!(self, Family::R | Family::P | Family::Y | Family::Z);
        if (k % 2 == 0) == odd_at_even_k {
            Parity::Odd
        } else {
            Parity::Even
        }
    }

    /// Degree at index k: k+1 for R, P, Y, Z; k for S, Q.
    pub fn degree_at(&self, k: u32) -> u64 {
        match self {
            Family::R | Family::P | Family::Y | Family::Z => u64::from(k) + 1,
            Family::S | Family::Q => u64::from(k),
        }
    }
}

/// Exact binomial coefficients via the Pascal recurrence, cached row by row.
#[derive(Default)]
pub struct BinomialTable {
    rows: Vec<Vec<Rational>>,
}

impl BinomialTable {
    pub fn new() -> Self {
        BinomialTable {
            rows: vec![vec![Rational::one()]],
        }
    }

    pub fn get(&mut self, n: usize, k: usize) -> Rational {
        while self.rows.len() <= n {
            let prev = self.rows.last().unwrap();
            let mut row = Vec::with_capacity(prev.len() + 1);
            row.push(Rational::one());
            for i in 1..prev.len() {
                row.push(&prev[i - 1] + &prev[i]);
            }
            row.push(Rational::one());
            self.rows.push(row);
        }
        if k > n {
            return Rational::zero();
        }
        self.rows[n][k].clone()
    }
}

/// Memoized generator for one family. Construction is append-only: an entry,
/// once inserted, is never mutated, so concurrent readers of completed
/// entries never contend with each other.
pub struct RecursiveFamily {
    family: Family,
    cache: RwLock<HashMap<u32, ParityPolynomial>>,
}

impl RecursiveFamily {
    pub fn new(family: Family) -> Self {
        RecursiveFamily {
            family,
            cache: RwLock::new(HashMap::new()),
        }
    }

    pub fn family(&self) -> Family {
        self.family
    }

    /// The polynomial at index k, built through the recursion with all lower
    /// indices resolved from the cache.
    pub fn get(&self, k: u32) -> ParityPolynomial {
        if let Some(p) = self.cache.read().unwrap().get(&k) {
            return p.clone();
        }
        let mut binom = BinomialTable::new();
        // resolve bottom-up so each step only reads finished entries;
        // duplicated work between racing builders is benign because every
        // builder computes the same value and insertion keeps the first
        for i in 0..=k {
            let have = self.cache.read().unwrap().contains_key(&i);
            if have {
                continue;
            }
            let p = self.build(i, &mut binom);
            self.cache.write().unwrap().entry(i).or_insert(p);
        }
        self.cache.read().unwrap().get(&k).unwrap().clone()
    }

    fn build(&self, k: u32, binom: &mut BinomialTable) -> ParityPolynomial {
        let kk = k as usize;
        let parity = self.family.parity_at(k);
        // dense coefficient accumulator indexed by exponent
        let mut dense = vec![Rational::zero(); kk + 2];

        // recursive part:
        // (1/(k+1)) sum_{j=3,5,..<=k+1} (-1)^{(j+1)/2} C(k+1,j) base^{j-1} F_{k+1-j}
        let inv_k1 = Rational::new(1, i64::from(k) + 1);
        let base = Rational::from_int(self.family.recursion_base());
        let mut j = 3usize;
        while j <= kk + 1 {
            let sign = if ((j + 1) / 2) % 2 == 0 { 1 } else { -1 };
            let coef =
                &(&binom.get(kk + 1, j) * &base.pow(j as i64 - 1)) * &Rational::from_int(sign);
            let coef = &coef * &inv_k1;
            let prev = self.cache.read().unwrap()[&(k + 1 - j as u32)].clone();
            for (slot, c) in prev.slots().iter().enumerate() {
                let e = prev.exponent_of_slot(slot) as usize;
                dense[e] = &dense[e] + &(c.rat() * &coef);
            }
            j += 2;
        }

        // non-recursive part, family by family
        match self.family {
            Family::R => {
                let half_k1 = Rational::new(1, 2 * (i64::from(k) + 1));
                for j in (0..=kk + 1).step_by(2) {
                    let sign = if (j / 2) % 2 == 0 { 1 } else { -1 };
                    let w = Rational::from_int(sign) * (Rational::from_int(2).pow(j as i64) + Rational::one());
                    dense[kk + 1 - j] =
                        &dense[kk + 1 - j] + &(&(&binom.get(kk + 1, j) * &w) * &half_k1);
                }
            }
            Family::S => {
                let half_k1 = Rational::new(1, 2 * (i64::from(k) + 1));
                for j in (1..=kk + 1).step_by(2) {
                    let sign = if ((j + 1) / 2) % 2 == 0 { 1 } else { -1 };
                    let w = Rational::from_int(sign) * (Rational::from_int(2).pow(j as i64) - Rational::one());
                    dense[kk + 1 - j] =
                        &dense[kk + 1 - j] + &(&(&binom.get(kk + 1, j) * &w) * &half_k1);
                }
            }
            Family::P => {
                let half_k1 = Rational::new(1, 2 * (i64::from(k) + 1));
                for j in (0..=kk + 1).step_by(2) {
                    let sign = if (j / 2) % 2 == 0 { 1 } else { -1 };
                    let w = &Rational::from_int(5).pow(j as i64) + &Rational::one();
                    let w = &w * &Rational::from_int(sign);
                    dense[kk + 1 - j] =
                        &dense[kk + 1 - j] + &(&(&binom.get(kk + 1, j) * &w) * &half_k1);
                }
            }
            Family::Q => {
                let half_k1 = Rational::new(1, 2 * (i64::from(k) + 1));
                for j in (1..=kk + 1).step_by(2) {
                    let sign = if ((j - 1) / 2) % 2 == 0 { 1 } else { -1 };
                    let w = &Rational::from_int(5).pow(j as i64) - &Rational::one();
                    let w = &w * &Rational::from_int(sign);
                    dense[kk + 1 - j] =
                        &dense[kk + 1 - j] + &(&(&binom.get(kk + 1, j) * &w) * &half_k1);
                }
            }
            Family::Y => {
                // -(1/(k+1)) [ x^{k+1} + sum_{j even} (-1)^{j/2} C(k+1,j) 3^j x^{k+1-j} ]
                dense[kk + 1] = &dense[kk + 1] - &inv_k1;
                for j in (0..=kk + 1).step_by(2) {
                    let sign = if (j / 2) % 2 == 0 { 1 } else { -1 };
                    let w = &Rational::from_int(3).pow(j as i64) * &Rational::from_int(sign);
                    dense[kk + 1 - j] =
                        &dense[kk + 1 - j] - &(&(&binom.get(kk + 1, j) * &w) * &inv_k1);
                }
            }
            Family::Z => {
                let two_k1 = Rational::new(2, i64::from(k) + 1);
                for j in (0..=kk + 1).step_by(2) {
                    let sign = if (j / 2) % 2 == 0 { 1 } else { -1 };
                    let w = &Rational::from_int(3).pow(j as i64) * &Rational::from_int(sign);
                    dense[kk + 1 - j] =
                        &dense[kk + 1 - j] - &(&(&binom.get(kk + 1, j) * &w) * &two_k1);
                }
            }
        }

        dense_to_parity(parity, &dense)
    }
}

fn dense_to_parity(parity: Parity, dense: &[Rational]) -> ParityPolynomial {
    let start = match parity {
        Parity::Even => 0,
        Parity::Odd => 1,
    };
    let mut slots = Vec::new();
    for (e, c) in dense.iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        assert_eq!(
            e % 2,
            start,
            "recursion produced an exponent of the wrong parity"
        );
        let j = (e - start) / 2;
        if slots.len() <= j {
            slots.resize(j + 1, SqrtThree::zero());
        }
        slots[j] = SqrtThree::from_rational(c.clone());
    }
    ParityPolynomial::from_slots(parity, slots)
}

/// Shared set of all six generators.
pub struct PolynomialTables {
    families: [RecursiveFamily; 6],
}

impl Default for PolynomialTables {
    fn default() -> Self {
        Self::new()
    }
}

impl PolynomialTables {
    pub fn new() -> Self {
        PolynomialTables {
            families: Family::ALL.map(RecursiveFamily::new),
        }
    }

    pub fn get_poly(&self, family: Family, k: u32) -> ParityPolynomial {
        let idx = Family::ALL.iter().position(|f| *f == family).unwrap();
        self.families[idx].get(k)
    }

    /// Named coefficient r_{k,j}, s_{k,j}, ...: the coefficient of x^{2j-1}
    /// on odd-parity rows and of x^{2j} on even-parity rows. Slots beyond the
    /// degree are zero; structurally impossible slots (the x^{-1} position)
    /// are an error.
    pub fn named_coeff(&self, family: Family, k: u32, j: u32) -> Result<Rational> {
        let p = self.get_poly(family, k);
        let parity = family.parity_at(k);
        let e = match parity {
            Parity::Odd => {
                if j == 0 {
                    return Err(Error::IndexOutOfRange(format!(
                        "{}_{{{k},0}} addresses exponent -1 on an odd-parity row",
                        family.as_str().to_lowercase()
                    )));
                }
                2 * u64::from(j) - 1
            }
            Parity::Even => 2 * u64::from(j),
        };
        let c = p.coeff_of_power(e);
        debug_assert!(c.is_rational());
        Ok(c.rat().clone())
    }
}
