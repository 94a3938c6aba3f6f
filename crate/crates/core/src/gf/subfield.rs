use super::{ExtElement, ExtField, PrimeModulus};
use crate::error::{Error, Result};

/// F_{p^s} sitting inside F_{p^m} through the basis element `beta`.
///
/// `beta` is a root in F_{p^m} of the modulus of F_{p^s}, so sending the
/// class of `x` to `beta` is an F_p-algebra embedding and `1, beta, ...,
/// beta^(s-1)` is F_p-linearly independent. Among all such roots the one
/// with the smallest packed index is chosen, i.e. the first in
/// lexicographic order of coordinate vectors read from the highest
/// coordinate down. With that order the class of `x` is always the first
/// root when s = m, so the embedding is the identity there. For s = 1,
/// `beta` is 1.
#[derive(Debug, Clone)]
pub struct SubfieldEmbedding {
    subfield: ExtField,
    field: ExtField,
    beta: ExtElement,
    beta_powers: Vec<ExtElement>,
}

pub fn subfield_embed(p: PrimeModulus, s: usize, m: usize) -> Result<SubfieldEmbedding> {
    if s == 0 || m == 0 || m % s != 0 {
        return Err(Error::SubfieldDegree { s, m });
    }
    let field = ExtField::new(p, m)?;
    let subfield = ExtField::new(p, s)?;
    let beta = if s == 1 {
        field.one()
    } else if s == m {
        smallest_root(&field, &subfield, conjugates_of_x(&field))
    } else {
        smallest_root(&field, &subfield, subfield_elements(&field, s))
    };
    let mut beta_powers = Vec::with_capacity(s);
    let mut acc = field.one();
    for _ in 0..s {
        beta_powers.push(acc);
        acc = field.mul_raw(acc, beta);
    }
    Ok(SubfieldEmbedding {
        subfield,
        field,
        beta,
        beta_powers,
    })
}

impl SubfieldEmbedding {
    pub fn subfield(&self) -> &ExtField {
        &self.subfield
    }

    pub fn field(&self) -> &ExtField {
        &self.field
    }

    pub fn beta(&self) -> ExtElement {
        self.beta
    }

    /// `1, beta, ..., beta^(s-1)`.
    pub fn beta_powers(&self) -> &[ExtElement] {
        &self.beta_powers
    }

    /// Degree s of the subfield over F_p.
    pub fn degree(&self) -> usize {
        self.subfield.degree()
    }

    /// Image of a subfield element given by its coordinates.
    pub fn embed_coeffs(&self, coeffs: &[u32]) -> Result<ExtElement> {
        // validates length and residue range
        self.subfield.element(coeffs)?;
        Ok(coeffs
            .iter()
            .zip(&self.beta_powers)
            .fold(self.field.zero(), |acc, (&c, &bp)| {
                let term = self.field.mul_raw(self.field.from_prime(u64::from(c)), bp);
                self.field.add_raw(acc, term)
            }))
    }

    pub fn embed(&self, a: ExtElement) -> Result<ExtElement> {
        if !self.subfield.contains(a) {
            return Err(Error::FieldMismatch);
        }
        self.embed_coeffs(&self.subfield.coeffs(a))
    }
}

fn eval_modulus_at(field: &ExtField, modulus: &[u32], y: ExtElement) -> ExtElement {
    modulus.iter().rev().fold(field.zero(), |acc, &c| {
        field.add_raw(field.mul_raw(acc, y), field.from_prime(u64::from(c)))
    })
}

fn smallest_root(
    field: &ExtField,
    subfield: &ExtField,
    candidates: impl Iterator<Item = ExtElement>,
) -> ExtElement {
    candidates
        .filter(|&y| eval_modulus_at(field, subfield.modulus(), y) == field.zero())
        .min()
        .expect("the subfield modulus splits in the extension")
}

/// Roots of the field's own modulus: x, x^p, ..., x^(p^(m-1)).
fn conjugates_of_x(field: &ExtField) -> impl Iterator<Item = ExtElement> + '_ {
    let mut coords = vec![0u32; field.degree()];
    coords[1] = 1;
    let x = field.element(&coords).expect("valid coordinates");
    std::iter::successors(Some(x), move |&y| Some(field.frob_raw(y))).take(field.degree())
}

/// The p^s elements fixed by y -> y^(p^s), as the kernel of that map
/// minus the identity (an F_p-linear map on coordinates).
fn subfield_elements(field: &ExtField, s: usize) -> impl Iterator<Item = ExtElement> + '_ {
    let m = field.degree();
    let p = field.characteristic().get();
    let columns: Vec<Vec<u32>> = (0..m)
        .map(|k| {
            let mut coords = vec![0u32; m];
            coords[k] = 1;
            let xk = field.element(&coords).expect("valid coordinates");
            let image = (0..s).fold(xk, |y, _| field.frob_raw(y));
            let mut col = field.coeffs(image);
            col[k] = (col[k] + p - 1) % p;
            col
        })
        .collect();
    let basis = nullspace(&columns, p);
    debug_assert_eq!(basis.len(), s);
    let mut weights = vec![0u32; basis.len()];
    let mut done = false;
    std::iter::from_fn(move || {
        if done {
            return None;
        }
        let mut coords = vec![0u64; m];
        for (w, v) in weights.iter().zip(&basis) {
            for (c, &vi) in coords.iter_mut().zip(v) {
                *c = (*c + u64::from(*w) * u64::from(vi)) % u64::from(p);
            }
        }
        done = !super::poly::odometer_step(&mut weights, p);
        let coords: Vec<u32> = coords.into_iter().map(|c| c as u32).collect();
        Some(field.element(&coords).expect("valid coordinates"))
    })
}

fn inv_mod(a: u32, p: u32) -> u32 {
    let (mut base, mut e, mut acc) = (u64::from(a), p - 2, 1u64);
    let pv = u64::from(p);
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * base % pv;
        }
        base = base * base % pv;
        e >>= 1;
    }
    acc as u32
}

/// Basis of the null space of the matrix whose columns are `columns`.
fn nullspace(columns: &[Vec<u32>], p: u32) -> Vec<Vec<u32>> {
    let ncols = columns.len();
    let nrows = columns.first().map_or(0, Vec::len);
    let pv = u64::from(p);
    let mut a: Vec<Vec<u32>> = (0..nrows)
        .map(|i| columns.iter().map(|col| col[i]).collect())
        .collect();
    let mut pivots = Vec::new();
    let mut row = 0;
    for col in 0..ncols {
        let Some(piv) = (row..nrows).find(|&i| a[i][col] != 0) else {
            continue;
        };
        a.swap(row, piv);
        let inv = u64::from(inv_mod(a[row][col], p));
        for v in a[row].iter_mut() {
            *v = (u64::from(*v) * inv % pv) as u32;
        }
        for i in 0..nrows {
            if i != row && a[i][col] != 0 {
                let factor = u64::from(a[i][col]);
                for j in 0..ncols {
                    let sub = factor * u64::from(a[row][j]) % pv;
                    a[i][j] = ((u64::from(a[i][j]) + pv - sub) % pv) as u32;
                }
            }
        }
        pivots.push(col);
        row += 1;
    }
    (0..ncols)
        .filter(|c| !pivots.contains(c))
        .map(|free| {
            let mut v = vec![0u32; ncols];
            v[free] = 1;
            for (r, &pc) in pivots.iter().enumerate() {
                v[pc] = (p - a[r][free]) % p;
            }
            v
        })
        .collect()
}
