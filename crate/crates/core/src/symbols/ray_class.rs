use num_complex::Complex64;
use num_integer::Integer;

use crate::Eisenstein;

fn slot(z: &Eisenstein) -> usize {
    (z.a.mod_floor(&9) * 9 + z.b.mod_floor(&9)) as usize
}

fn mul_mod9(x: usize, y: usize) -> usize {
    let a = Eisenstein::new((x / 9) as i128, (x % 9) as i128);
    let b = Eisenstein::new((y / 9) as i128, (y % 9) as i128);
    slot(&(a * b))
}

/// The ray class group modulo 9 of `Q(w)`: `(Z[w]/9)^* / <units>`,
/// tabulated on the 81 residues modulo 9.
#[derive(Clone, Debug)]
pub struct RayClassGroup9 {
    /// class index of each residue slot, `None` when not prime to 3
    class_of: [Option<u8>; 81],
    /// exponents of each class in the basis `generators`
    coords: Vec<(u8, u8)>,
    /// orders of the two basis elements (the second is 1 when cyclic)
    orders: (u8, u8),
    generators: (Eisenstein, Eisenstein),
}

impl Default for RayClassGroup9 {
    fn default() -> Self {
        Self::new()
    }
}

impl RayClassGroup9 {
    pub fn new() -> Self {
        let units: Vec<usize> = Eisenstein::units().iter().map(slot).collect();
        let coprime = |s: usize| !(s / 9 + s % 9).is_multiple_of(3);
        let mut class_of = [None; 81];
        let mut reps = Vec::new();
        for s in (0..81).filter(|&s| coprime(s)) {
            if class_of[s].is_some() {
                continue;
            }
            let id = reps.len() as u8;
            for &u in &units {
                class_of[mul_mod9(s, u)] = Some(id);
            }
            reps.push(s);
        }
        let h = reps.len();
        let class_mul = |x: usize, y: usize| class_of[mul_mod9(reps[x], reps[y])].unwrap() as usize;
        let identity = class_of[slot(&Eisenstein::one())].unwrap() as usize;
        let order_of = |x: usize| {
            let (mut acc, mut k) = (x, 1);
            while acc != identity {
                acc = class_mul(acc, x);
                k += 1;
            }
            k
        };
        let powers = |x: usize, n: usize| {
            let mut v = vec![identity];
            for _ in 1..n {
                v.push(class_mul(*v.last().unwrap(), x));
            }
            v
        };
        let g1 = (0..h).max_by_key(|&x| (order_of(x), std::cmp::Reverse(x))).unwrap();
        let n1 = order_of(g1);
        let span1 = powers(g1, n1);
        let (g2, n2) = if n1 == h {
            (identity, 1)
        } else {
            // smallest k with x^k in <g1> gives the quotient order
            let g2 = (0..h).find(|x| !span1.contains(x)).unwrap();
            let mut k = 1;
            let mut acc = g2;
            while !span1.contains(&acc) {
                acc = class_mul(acc, g2);
                k += 1;
            }
            (g2, k)
        };
        assert_eq!(n1 * n2, h, "group of order {h} needs at most two generators");
        let mut coords = vec![(0u8, 0u8); h];
        let g2pow = powers(g2, n2);
        for (i, &x) in span1.iter().enumerate() {
            for (j, &y) in g2pow.iter().enumerate() {
                coords[class_mul(x, y)] = (i as u8, j as u8);
            }
        }
        let elem = |c: usize| Eisenstein::new((reps[c] / 9) as i128, (reps[c] % 9) as i128);
        Self { class_of, coords, orders: (n1 as u8, n2 as u8), generators: (elem(g1), elem(g2)) }
    }

    /// `#h_(9)`, the number of ray classes.
    pub fn order(&self) -> usize {
        self.coords.len()
    }

    /// Invariant factors, e.g. `(3, 3)` or `(9, 1)`.
    pub fn structure(&self) -> (u8, u8) {
        self.orders
    }

    pub fn generators(&self) -> (Eisenstein, Eisenstein) {
        self.generators
    }

    /// Class of `z`, or `None` if `z` is not prime to 3.
    pub fn class_of(&self, z: &Eisenstein) -> Option<usize> {
        self.class_of[slot(z)].map(usize::from)
    }

    /// All characters, the principal one first.
    pub fn characters(&self) -> Vec<RayClassCharacter> {
        let (n1, n2) = self.orders;
        let mut out = Vec::with_capacity(self.order());
        for k1 in 0..n1 {
            for k2 in 0..n2 {
                let mut phase = [None; 81];
                for (s, c) in self.class_of.iter().enumerate() {
                    if let Some(c) = c {
                        let (i, j) = self.coords[*c as usize];
                        let ninths = (k1 as u32 * i as u32 * (9 / n1 as u32)
                            + k2 as u32 * j as u32 * (9 / n2 as u32))
                            % 9;
                        phase[s] = Some(ninths as u8);
                    }
                }
                out.push(RayClassCharacter { index: (k1, k2), phase });
            }
        }
        out
    }
}

/// A character of [`RayClassGroup9`], stored as phases in ninths of a turn.
#[derive(Clone, Debug)]
pub struct RayClassCharacter {
    pub index: (u8, u8),
    phase: [Option<u8>; 81],
}

impl RayClassCharacter {
    pub fn is_principal(&self) -> bool {
        self.index == (0, 0)
    }

    /// `psi(z)`, zero when `z` is not prime to 3.
    pub fn eval(&self, z: &Eisenstein) -> Complex64 {
        match self.phase[slot(z)] {
            None => Complex64::new(0.0, 0.0),
            Some(k) => Complex64::from_polar(1.0, std::f64::consts::TAU * k as f64 / 9.0),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn has_nine_classes() {
        let g = RayClassGroup9::new();
        assert_eq!(g.order(), 9);
        assert_eq!(g.characters().len(), 9);
        assert!(g.characters()[0].is_principal());
        for u in Eisenstein::units() {
            assert_eq!(g.class_of(&u), g.class_of(&Eisenstein::one()));
        }
    }

    #[test]
    fn characters_are_homomorphisms() {
        let g = RayClassGroup9::new();
        let elems: Vec<Eisenstein> = (0..9)
            .flat_map(|a| (0..9).map(move |b| Eisenstein::new(a, b)))
            .filter(|z| z.is_coprime_to_three())
            .collect();
        for chi in g.characters() {
            for x in &elems {
                for y in elems.iter().step_by(5) {
                    let lhs = chi.eval(&(*x * *y));
                    let rhs = chi.eval(x) * chi.eval(y);
                    assert!((lhs - rhs).norm() < 1e-12);
                }
            }
        }
    }
}
