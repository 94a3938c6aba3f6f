//! Evaluation strategies, every product routed through a [`MulLedger`].
//!
//! * [`eval_naive`] is an independent oracle: fresh repeated multiplication
//!   for every power of every term, no ledger.
//! * [`eval_frobenius`] decomposes `P(x) = sum_i x^i P_i(x^p)` recursively to
//!   depth L, evaluates all `p^{rL}` leaves from one shared monomial table,
//!   then rebuilds each node as `sum_i x^i(a) * P_i(a)^p` bottom-up.
//! * [`eval_batch_shared`] runs several polynomials through one table.
//! * [`eval_extension`] handles coefficients in a subfield F_{p^s} by
//!   splitting them into `s` prime-field polynomials.
//!
//! Reconstruction monomials `x^i`, `i` in `[0, p)^r`, are read from the
//! table when their degree fits, are free when their degree is at most 1,
//! and otherwise cost one product each, computed once per evaluation.

use crate::costmodel::{max_depth, optimal_depth, shared_cost, CostFn};
use crate::error::{Error, Result};
use crate::gf::{CountMode, ExtElement, ExtField, MulCategory, MulLedger, SubfieldEmbedding};
use crate::mpoly::decompose::{residue_count, residue_digits};
use crate::mpoly::{deglex_exponents, deglex_rank, split_base_field, DensePoly, ExponentVec, PolyFamily};

/// Values at a point of every monomial of total degree at most `d`, in
/// deglex rank order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MonomialTable {
    d: usize,
    r: usize,
    values: Vec<ExtElement>,
}

impl MonomialTable {
    pub fn degree(&self) -> usize {
        self.d
    }

    pub fn num_vars(&self) -> usize {
        self.r
    }

    pub fn values(&self) -> &[ExtElement] {
        &self.values
    }

    pub fn get(&self, e: &ExponentVec) -> Option<ExtElement> {
        (e.num_vars() == self.r && e.degree() <= self.d).then(|| self.values[deglex_rank(e)])
    }
}

/// `c * t` for every table entry `t` and every
/// `c in 2..p`; empty over F_2.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ScalarMultiples {
    p: u32,
    len: usize,
    scaled: Vec<ExtElement>,
}

impl ScalarMultiples {
    /// `c * t_k` for a residue `c < p`.
    #[inline]
    fn term(&self, c: u32, k: usize, table: &[ExtElement]) -> ExtElement {
        match (c, k) {
            (0, _) => ExtElement::ZERO,
            (1, _) => table[k],
            _ => self.scaled[(c as usize - 2) * self.len + k],
        }
    }
}

/// Final value, depth and ledger of one evaluation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EvalResult {
    pub value: ExtElement,
    pub l_used: usize,
    pub ledger: MulLedger,
}

fn check_point(field: &ExtField, r: usize, point: &[ExtElement]) -> Result<()> {
    if r == 0 {
        return Err(Error::ZeroVariables);
    }
    if point.len() != r {
        return Err(Error::DimensionMismatch {
            expected: r,
            got: point.len(),
        });
    }
    if point.iter().any(|&a| !field.contains(a)) {
        return Err(Error::FieldMismatch);
    }
    Ok(())
}

fn check_characteristic(field: &ExtField, poly: &DensePoly) -> Result<()> {
    if field.characteristic() != poly.characteristic() {
        return Err(Error::CharacteristicMismatch {
            poly: poly.characteristic().get(),
            field: field.characteristic().get(),
        });
    }
    Ok(())
}

fn naive_sum(
    field: &ExtField,
    poly: &DensePoly,
    point: &[ExtElement],
    coeff: impl Fn(&[u32]) -> Result<ExtElement>,
) -> Result<ExtElement> {
    check_characteristic(field, poly)?;
    check_point(field, poly.num_vars(), point)?;
    let mut acc = field.zero();
    for (e, c) in poly.terms() {
        let mut term = coeff(c)?;
        for (&alpha, &exp) in point.iter().zip(e.as_slice()) {
            let mut power = field.one();
            for _ in 0..exp {
                power = field.mul_uncounted(power, alpha)?;
            }
            term = field.mul_uncounted(term, power)?;
        }
        acc = field.add(acc, term)?;
    }
    Ok(acc)
}

/// Term-by-term oracle for a polynomial over F_p.
pub fn eval_naive(field: &ExtField, poly: &DensePoly, point: &[ExtElement]) -> Result<ExtElement> {
    if poly.coeff_degree() != 1 {
        return Err(Error::NotPrimeField(poly.coeff_degree()));
    }
    naive_sum(field, poly, point, |c| Ok(field.from_prime(u64::from(c[0]))))
}

/// Term-by-term oracle for a polynomial over F_{p^s}, coefficients mapped
/// into F_{p^m} through `embedding`.
pub fn eval_naive_embedded(
    embedding: &SubfieldEmbedding,
    poly: &DensePoly,
    point: &[ExtElement],
) -> Result<ExtElement> {
    naive_sum(embedding.field(), poly, point, |c| embedding.embed_coeffs(c))
}

/// Each monomial of degree `t + 1 >= 2` is the first variable it contains
/// times a degree-`t` entry, one `Table` product each.
pub fn build_monomial_table(
    field: &ExtField,
    d: usize,
    point: &[ExtElement],
    ledger: &mut MulLedger,
) -> Result<MonomialTable> {
    check_point(field, point.len(), point)?;
    let r = point.len();
    let exponents = deglex_exponents(r, d);
    let mut values = Vec::with_capacity(exponents.len());
    for e in &exponents {
        let value = match e.degree() {
            0 => field.one(),
            1 => point[e.as_slice().iter().position(|&x| x == 1).unwrap()],
            _ => {
                let j = e.as_slice().iter().position(|&x| x > 0).unwrap();
                let mut prev = e.as_slice().to_vec();
                prev[j] -= 1;
                let prev = values[deglex_rank(&ExponentVec::new(prev))];
                field.mul_counted(point[j], prev, ledger, MulCategory::Table)
            }
        };
        values.push(value);
    }
    Ok(MonomialTable { d, r, values })
}

/// `(p - 2)(M_r(d) - 1)` `ScalarPremult` products; nothing over F_2.
pub fn premultiply_scalars(
    field: &ExtField,
    table: &MonomialTable,
    ledger: &mut MulLedger,
) -> ScalarMultiples {
    let p = field.characteristic().get();
    let len = table.values.len();
    let mut scaled = Vec::with_capacity((p.saturating_sub(2) as usize) * len);
    for c in 2..p {
        let scalar = field.from_prime(u64::from(c));
        // c * 1 is the constant c itself
        scaled.push(scalar);
        for &t in &table.values[1..] {
            scaled.push(field.mul_counted(scalar, t, ledger, MulCategory::ScalarPremult));
        }
    }
    ScalarMultiples { p, len, scaled }
}

#[inline]
fn sum_lookups(
    field: &ExtField,
    coeffs: &[u32],
    table: &MonomialTable,
    scalars: &ScalarMultiples,
) -> ExtElement {
    let values = &table.values;
    coeffs
        .iter()
        .enumerate()
        .filter(|(_, &c)| c != 0)
        .fold(ExtElement::ZERO, |acc, (k, &c)| {
            field.add_raw(acc, scalars.term(c, k, values))
        })
}

/// Sum of precomputed terms; performs no multiplication.
pub fn eval_with_table(
    field: &ExtField,
    poly: &DensePoly,
    table: &MonomialTable,
    scalars: &ScalarMultiples,
) -> Result<ExtElement> {
    check_characteristic(field, poly)?;
    if poly.coeff_degree() != 1 {
        return Err(Error::NotPrimeField(poly.coeff_degree()));
    }
    if poly.num_vars() != table.r {
        return Err(Error::DimensionMismatch {
            expected: table.r,
            got: poly.num_vars(),
        });
    }
    if poly.degree_bound() > table.d {
        return Err(Error::DegreeExceedsTable {
            degree: poly.degree_bound(),
            table: table.d,
        });
    }
    if scalars.p != field.characteristic().get() || scalars.len != table.values.len() {
        return Err(Error::HeterogeneousBatch);
    }
    Ok(sum_lookups(field, poly.coeffs(), table, scalars))
}

/// `x^i(a)` for every residue index `i`, in index order. The predecessor of
/// a computed monomial has a smaller index, so one pass suffices.
fn reconstruction_monomials(
    field: &ExtField,
    point: &[ExtElement],
    table: &MonomialTable,
    ledger: &mut MulLedger,
) -> Result<Vec<ExtElement>> {
    let p = field.characteristic();
    let r = point.len();
    let count = residue_count(p, r)?;
    let mut monos = Vec::with_capacity(count);
    for index in 0..count {
        let digits = residue_digits(index, p.get(), r);
        let degree: usize = digits.iter().map(|&x| x as usize).sum();
        let value = if degree <= table.d {
            table.values[deglex_rank(&ExponentVec::new(digits))]
        } else if degree == 1 {
            point[digits.iter().position(|&x| x == 1).unwrap()]
        } else {
            let j = digits.iter().position(|&x| x > 0).unwrap();
            let prev = index - (p.get() as usize).pow((r - 1 - j) as u32);
            field.mul_counted(point[j], monos[prev], ledger, MulCategory::Reconstruction)
        };
        monos.push(value);
    }
    Ok(monos)
}

fn check_depth(field: &ExtField, n: usize, depth: usize) -> Result<()> {
    let max = max_depth(field.characteristic(), n);
    if depth > max {
        return Err(Error::DepthOutOfRange { depth, max });
    }
    Ok(())
}

fn eval_family(
    field: &ExtField,
    family: PolyFamily,
    point: &[ExtElement],
    depth: usize,
    ledger: &mut MulLedger,
) -> Result<Vec<ExtElement>> {
    check_depth(field, family.degree_bound(), depth)?;
    if depth == 0 {
        let table = build_monomial_table(field, family.degree_bound(), point, ledger)?;
        let scalars = premultiply_scalars(field, &table, ledger);
        return Ok((0..family.len())
            .map(|j| sum_lookups(field, family.member_coeffs(j), &table, &scalars))
            .collect());
    }
    // Levels 0..L-1 are materialized; the last split is done one parent at
    // a time so the p^{rL} leaves never have to be stored together.
    let mut parents = family;
    let mut sizes = Vec::with_capacity(depth - 1);
    for _ in 1..depth {
        sizes.push(parents.len());
        parents = parents.decompose()?;
    }
    let splitter = parents.splitter()?;
    let table = build_monomial_table(field, splitter.child_n, point, ledger)?;
    let scalars = premultiply_scalars(field, &table, ledger);
    let monos = reconstruction_monomials(field, point, &table, ledger)?;
    let structural = ledger.mode() == CountMode::Structural;

    let stride = splitter.child_stride;
    let mut block = vec![0u32; splitter.block_len()];
    let mut leaves = vec![ExtElement::ZERO; splitter.fan_out];
    let mut values = Vec::with_capacity(parents.len());
    for j in 0..parents.len() {
        if stride == 1 {
            // constant leaves: each value is a single lookup
            splitter.scatter(parents.member_coeffs(j), &mut block);
            for (leaf, &c) in leaves.iter_mut().zip(&block) {
                *leaf = scalars.term(c, 0, &table.values);
            }
        } else {
            splitter.scatter(parents.member_coeffs(j), &mut block);
            for (leaf, coeffs) in leaves.iter_mut().zip(block.chunks_exact(stride)) {
                *leaf = sum_lookups(field, coeffs, &table, &scalars);
            }
        }
        values.push(if structural {
            reconstruct_node(field, &monos, &leaves)
        } else {
            reconstruct_node_counted(field, &monos, &leaves, ledger)
        });
    }
    drop(parents);
    let fan_out = monos.len();
    let charge_level = |ledger: &mut MulLedger, nodes: usize| {
        if structural {
            let nodes = nodes as u64;
            ledger.charge_structural_nodes(nodes * fan_out as u64, nodes * (fan_out as u64 - 1));
        }
    };
    charge_level(ledger, values.len());
    for &parents in sizes.iter().rev() {
        for j in 0..parents {
            let children = &values[j * fan_out..(j + 1) * fan_out];
            values[j] = if structural {
                reconstruct_node(field, &monos, children)
            } else {
                reconstruct_node_counted(field, &monos, children, ledger)
            };
        }
        values.truncate(parents);
        charge_level(ledger, parents);
    }
    Ok(values)
}

/// `sum_i x^i(a) * child_i^p`, the `i = 0` product skipped. Structural
/// charges are added per level by the caller.
#[inline]
fn reconstruct_node(field: &ExtField, monos: &[ExtElement], children: &[ExtElement]) -> ExtElement {
    field.frobenius_combine(monos, children)
}

fn reconstruct_node_counted(
    field: &ExtField,
    monos: &[ExtElement],
    children: &[ExtElement],
    ledger: &mut MulLedger,
) -> ExtElement {
    let mut acc = field.frobenius_counted(children[0], ledger);
    for (&mono, &child) in monos[1..].iter().zip(&children[1..]) {
        let lifted = field.frobenius_counted(child, ledger);
        let term = field.mul_counted(mono, lifted, ledger, MulCategory::Reconstruction);
        acc = field.add_raw(acc, term);
    }
    acc
}

fn family_for(field: &ExtField, polys: &[&DensePoly], point: &[ExtElement]) -> Result<PolyFamily> {
    let family = PolyFamily::from_polys(polys)?;
    check_characteristic(field, polys[0])?;
    check_point(field, polys[0].num_vars(), point)?;
    Ok(family)
}

/// Depth-`depth` Frobenius evaluation of a polynomial over F_p.
pub fn eval_frobenius(
    field: &ExtField,
    poly: &DensePoly,
    point: &[ExtElement],
    depth: usize,
    ledger: &mut MulLedger,
) -> Result<ExtElement> {
    let family = family_for(field, &[poly], point)?;
    Ok(eval_family(field, family, point, depth, ledger)?[0])
}

/// [`eval_frobenius`] at the depth minimizing the predicted count.
pub fn eval_auto(
    field: &ExtField,
    poly: &DensePoly,
    point: &[ExtElement],
    mode: CountMode,
) -> Result<EvalResult> {
    let (depth, _) = optimal_depth(
        field.characteristic(),
        poly.degree_bound(),
        poly.num_vars(),
        CostFn::Predicted,
    )?;
    let mut ledger = MulLedger::new(mode);
    let value = eval_frobenius(field, poly, point, depth, &mut ledger)?;
    Ok(EvalResult {
        value,
        l_used: depth,
        ledger,
    })
}

/// Evaluates polynomials sharing `(p, r, n)` with one monomial table; only
/// the reconstruction is repeated per polynomial.
pub fn eval_batch_shared(
    field: &ExtField,
    polys: &[DensePoly],
    point: &[ExtElement],
    depth: usize,
    ledger: &mut MulLedger,
) -> Result<Vec<ExtElement>> {
    if polys.is_empty() {
        return Ok(Vec::new());
    }
    let refs: Vec<&DensePoly> = polys.iter().collect();
    let family = family_for(field, &refs, point)?;
    eval_family(field, family, point, depth, ledger)
}

/// Depth minimizing [`shared_cost`] for `s` components; smallest on ties.
fn shared_optimal_depth(field: &ExtField, s: usize, n: usize, r: usize) -> Result<usize> {
    let p = field.characteristic();
    let mut best: Option<(usize, u64)> = None;
    let mut last_err = None;
    for depth in 0..=max_depth(p, n) {
        match shared_cost(p, s, n, r, depth) {
            Ok(c) if best.map_or(true, |(_, b)| c < b) => best = Some((depth, c)),
            Ok(_) => {}
            Err(e) => last_err = Some(e),
        }
    }
    best.map(|(depth, _)| depth)
        .ok_or_else(|| last_err.unwrap_or(Error::Overflow("multiplication count")))
}

/// Evaluates `P` over F_{p^s} at a point of F_{p^m}: split into
/// `P = sum_k beta^k q_k`, batch-evaluate the `q_k`, recombine with
/// `2s - 3` `Combination` products (`beta^2..beta^{s-1}`, then
/// `beta^k v_k` for k >= 1). `depth = None` picks the depth minimizing the
/// shared count.
pub fn eval_extension(
    embedding: &SubfieldEmbedding,
    poly: &DensePoly,
    point: &[ExtElement],
    depth: Option<usize>,
    mode: CountMode,
) -> Result<EvalResult> {
    let field = embedding.field();
    let s = embedding.degree();
    let parts = split_base_field(poly, embedding)?;
    let depth = match depth {
        Some(depth) => depth,
        None => shared_optimal_depth(field, s, poly.degree_bound(), poly.num_vars())?,
    };
    let mut ledger = MulLedger::new(mode);
    let values = eval_batch_shared(field, &parts, point, depth, &mut ledger)?;
    let beta = embedding.beta();
    let mut powers = vec![field.one(), beta];
    for _ in 2..s {
        let next = field.mul_counted(*powers.last().unwrap(), beta, &mut ledger, MulCategory::Combination);
        powers.push(next);
    }
    let mut value = values[0];
    for (&power, &v) in powers[1..].iter().zip(&values[1..]) {
        let term = field.mul_counted(power, v, &mut ledger, MulCategory::Combination);
        value = field.add_raw(value, term);
    }
    Ok(EvalResult {
        value,
        l_used: depth,
        ledger,
    })
}
