//! Finitely presented abelian groups `Z^n / L`, their elements, subgroups
//! and endomorphisms.
//!
//! Every object lives inside one ambient `Z^n`. An element is stored as the
//! canonical coset representative of its lift, a subgroup as the canonical
//! Hermite basis of the lattice spanned by its generators together with the
//! relations, and an endomorphism as an `n x n` integer matrix that maps the
//! relation lattice into itself.

use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::lattice::{snf, Lattice};
use crate::matrix::IntMatrix;

struct GroupData {
    rank: usize,
    relations: IntMatrix,
    lattice: Lattice,
    /// Nonzero Smith diagonal (including units).
    diagonal: Vec<BigInt>,
    snf_u: IntMatrix,
    snf_u_inv: IntMatrix,
}

/// A finitely presented abelian group `Z^n / L`, `L` the column lattice of
/// the relation matrix. Cloning is cheap.
#[derive(Clone)]
pub struct Group(Arc<GroupData>);

impl Group {
    /// `Z^n` modulo the columns of `relations` (an `n x m` matrix, `m` may be 0).
    pub fn from_presentation(n: usize, relations: IntMatrix) -> Result<Group> {
        if relations.rows() != n {
            return Err(Error::DimensionMismatch(format!(
                "relation matrix has {} rows, ambient rank is {}",
                relations.rows(),
                n
            )));
        }
        let lattice = Lattice::from_matrix(&relations);
        let smith = snf(&relations);
        let diagonal = smith.diagonal();
        Ok(Group(Arc::new(GroupData {
            rank: n,
            relations,
            lattice,
            diagonal,
            snf_u: smith.u,
            snf_u_inv: smith.u_inv,
        })))
    }

    pub fn free(n: usize) -> Group {
        Self::from_presentation(n, IntMatrix::zeros(n, 0)).expect("valid presentation")
    }

    /// `Z(m)` for `m >= 1`.
    pub fn cyclic(m: u64) -> Group {
        Self::from_invariants(&[m])
    }

    /// `Z(d_1) + ... + Z(d_k)` with diagonal relations; a `0` entry gives a copy of `Z`.
    pub fn from_invariants(orders: &[u64]) -> Group {
        let n = orders.len();
        let mut rel = IntMatrix::zeros(n, n);
        for (i, &d) in orders.iter().enumerate() {
            rel[(i, i)] = BigInt::from(d);
        }
        Self::from_presentation(n, rel).expect("valid presentation")
    }

    /// Ambient rank `n`.
    pub fn rank(&self) -> usize {
        self.0.rank
    }

    pub fn relations(&self) -> &IntMatrix {
        &self.0.relations
    }

    /// Canonical basis of the relation lattice.
    pub fn relation_lattice(&self) -> &Lattice {
        &self.0.lattice
    }

    /// Invariant factors `d_1 | ... | d_k`, all at least 2.
    pub fn invariant_factors(&self) -> Vec<BigInt> {
        self.0.diagonal.iter().filter(|d| !d.is_one()).cloned().collect()
    }

    pub fn free_rank(&self) -> usize {
        self.0.rank - self.0.diagonal.len()
    }

    pub fn is_finite(&self) -> bool {
        self.free_rank() == 0
    }

    pub fn is_trivial(&self) -> bool {
        self.free_rank() == 0 && self.0.diagonal.iter().all(One::is_one)
    }

    /// Group order, `None` when infinite.
    pub fn order(&self) -> Option<BigInt> {
        self.is_finite().then(|| self.0.diagonal.iter().product())
    }

    /// Exponent of the torsion subgroup (1 when torsion-free).
    pub fn torsion_exponent(&self) -> BigInt {
        self.0.diagonal.last().cloned().unwrap_or_else(BigInt::one)
    }

    pub fn same_as(&self, other: &Group) -> bool {
        Arc::ptr_eq(&self.0, &other.0)
            || (self.0.rank == other.0.rank && self.0.lattice == other.0.lattice)
    }

    fn check_same(&self, other: &Group) -> Result<()> {
        if self.same_as(other) {
            Ok(())
        } else {
            Err(Error::ParentMismatch)
        }
    }

    /// Canonical representative of a lift.
    pub fn reduce(&self, coords: &[BigInt]) -> Vec<BigInt> {
        assert_eq!(coords.len(), self.rank(), "coordinate length mismatch");
        self.0.lattice.reduce(coords)
    }

    pub fn element(&self, coords: Vec<BigInt>) -> Result<Element> {
        if coords.len() != self.rank() {
            return Err(Error::DimensionMismatch(format!(
                "element has {} coordinates, group rank is {}",
                coords.len(),
                self.rank()
            )));
        }
        Ok(Element { coords: self.reduce(&coords), group: self.clone() })
    }

    pub fn element_i64(&self, coords: &[i64]) -> Result<Element> {
        self.element(coords.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn zero(&self) -> Element {
        Element { coords: vec![BigInt::zero(); self.rank()], group: self.clone() }
    }

    /// Image of the `i`-th standard generator of `Z^n`.
    pub fn generator(&self, i: usize) -> Element {
        let mut c = vec![BigInt::zero(); self.rank()];
        c[i] = BigInt::one();
        self.element(c).expect("in range")
    }

    pub fn add(&self, a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
        let s: Vec<BigInt> = a.iter().zip(b).map(|(x, y)| x + y).collect();
        self.reduce(&s)
    }

    pub fn whole(&self) -> Subgroup {
        Subgroup::from_lattice(self, Lattice::full(self.rank()))
    }

    pub fn trivial_subgroup(&self) -> Subgroup {
        Subgroup::from_lattice(self, self.0.lattice.clone())
    }

    /// Subgroup generated by the given lifts.
    pub fn subgroup(&self, generators: &[Vec<BigInt>]) -> Result<Subgroup> {
        if generators.iter().any(|g| g.len() != self.rank()) {
            return Err(Error::DimensionMismatch("generator length".into()));
        }
        let gens: Vec<Vec<BigInt>> = generators.to_vec();
        let mut all = gens;
        all.extend(self.0.lattice.basis().iter().cloned());
        Ok(Subgroup::from_lattice(self, Lattice::from_generators(self.rank(), all)))
    }

    pub fn subgroup_i64<R: AsRef<[i64]>>(&self, generators: &[R]) -> Result<Subgroup> {
        let g: Vec<Vec<BigInt>> = generators
            .iter()
            .map(|r| r.as_ref().iter().map(|&v| BigInt::from(v)).collect())
            .collect();
        self.subgroup(&g)
    }

    fn torsion_coords(&self) -> usize {
        self.0.diagonal.len()
    }

    /// The torsion subgroup `t(G)`.
    pub fn torsion_subgroup(&self) -> Subgroup {
        let k = self.torsion_coords();
        let gens: Vec<Vec<BigInt>> = (0..k).map(|i| self.0.snf_u_inv.column(i)).collect();
        self.subgroup(&gens).expect("dimensions agree")
    }

    /// Generators of the nontrivial torsion cyclic summands, with their orders.
    pub fn torsion_generators(&self) -> Vec<(Vec<BigInt>, BigInt)> {
        self.0
            .diagonal
            .iter()
            .enumerate()
            .filter(|(_, d)| !d.is_one())
            .map(|(i, d)| (self.reduce(&self.0.snf_u_inv.column(i)), d.clone()))
            .collect()
    }

    /// The free quotient `G / t(G) = Z^r` and the `r x n` projection matrix.
    pub fn free_quotient(&self) -> (Group, IntMatrix) {
        let k = self.torsion_coords();
        let r = self.free_rank();
        let mut proj = IntMatrix::zeros(r, self.rank());
        for i in 0..r {
            for j in 0..self.rank() {
                proj[(i, j)] = self.0.snf_u[(k + i, j)].clone();
            }
        }
        (Group::free(r), proj)
    }

    /// Lift of the `i`-th free-quotient basis vector.
    fn free_lift(&self, i: usize) -> Vec<BigInt> {
        self.0.snf_u_inv.column(self.torsion_coords() + i)
    }

    /// `G / H`, presented on the same ambient rank.
    pub fn quotient(&self, h: &Subgroup) -> Result<(Group, Projection)> {
        self.check_same(&h.group)?;
        let q = Group::from_presentation(self.rank(), h.lattice.basis_matrix())?;
        Ok((q.clone(), Projection { source: self.clone(), target: q }))
    }

    /// Invariant-factor description such as `Z^2 + Z(4)`.
    pub fn describe(&self) -> String {
        let mut parts = Vec::new();
        match self.free_rank() {
            0 => {}
            1 => parts.push("Z".to_string()),
            r => parts.push(format!("Z^{r}")),
        }
        for d in self.invariant_factors() {
            parts.push(format!("Z({d})"));
        }
        if parts.is_empty() {
            "0".into()
        } else {
            parts.join(" + ")
        }
    }
}

impl PartialEq for Group {
    fn eq(&self, other: &Self) -> bool {
        self.same_as(other)
    }
}

impl Eq for Group {}

impl fmt::Debug for Group {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Group(rank {}, {})", self.rank(), self.describe())
    }
}

/// An element of a group, held as its canonical coset representative.
#[derive(Clone)]
pub struct Element {
    group: Group,
    coords: Vec<BigInt>,
}

impl Element {
    pub fn group(&self) -> &Group {
        &self.group
    }

    pub fn coords(&self) -> &[BigInt] {
        &self.coords
    }

    pub fn into_coords(self) -> Vec<BigInt> {
        self.coords
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(Zero::is_zero)
    }

    pub fn add(&self, other: &Element) -> Result<Element> {
        self.group.check_same(&other.group)?;
        Ok(Element { coords: self.group.add(&self.coords, &other.coords), group: self.group.clone() })
    }

    pub fn neg(&self) -> Element {
        let c: Vec<BigInt> = self.coords.iter().map(|v| -v).collect();
        Element { coords: self.group.reduce(&c), group: self.group.clone() }
    }

    pub fn scale(&self, k: &BigInt) -> Element {
        let c: Vec<BigInt> = self.coords.iter().map(|v| v * k).collect();
        Element { coords: self.group.reduce(&c), group: self.group.clone() }
    }
}

impl PartialEq for Element {
    fn eq(&self, other: &Self) -> bool {
        self.group.same_as(&other.group) && self.coords == other.coords
    }
}

impl Eq for Element {}

impl fmt::Debug for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let c: Vec<String> = self.coords.iter().map(|v| v.to_string()).collect();
        write!(f, "({})", c.join(", "))
    }
}

/// A subgroup, canonicalized by the Hermite basis of generators plus relations.
#[derive(Clone)]
pub struct Subgroup {
    group: Group,
    lattice: Lattice,
}

impl Subgroup {
    fn from_lattice(group: &Group, lattice: Lattice) -> Subgroup {
        debug_assert!(lattice.contains_lattice(group.relation_lattice()));
        Subgroup { group: group.clone(), lattice }
    }

    pub fn group(&self) -> &Group {
        &self.group
    }

    pub fn lattice(&self) -> &Lattice {
        &self.lattice
    }

    /// Canonical lifts of a generating set (basis vectors that are not relations).
    pub fn generators(&self) -> Vec<Vec<BigInt>> {
        self.lattice
            .basis()
            .iter()
            .map(|b| self.group.reduce(b))
            .filter(|b| b.iter().any(|v| !v.is_zero()))
            .collect()
    }

    pub fn is_trivial(&self) -> bool {
        self.lattice == *self.group.relation_lattice()
    }

    pub fn is_whole(&self) -> bool {
        self.lattice.index().is_some_and(|i| i.is_one())
    }

    pub fn contains(&self, x: &Element) -> bool {
        x.group.same_as(&self.group) && self.lattice.contains(&x.coords)
    }

    pub fn contains_coords(&self, x: &[BigInt]) -> bool {
        self.lattice.contains(x)
    }

    pub fn contains_subgroup(&self, other: &Subgroup) -> bool {
        self.lattice.contains_lattice(&other.lattice)
    }

    pub fn join(&self, other: &Subgroup) -> Result<Subgroup> {
        self.group.check_same(&other.group)?;
        Ok(Subgroup::from_lattice(&self.group, self.lattice.join(&other.lattice)))
    }

    pub fn intersect(&self, other: &Subgroup) -> Result<Subgroup> {
        self.group.check_same(&other.group)?;
        Ok(Subgroup::from_lattice(&self.group, self.lattice.intersect(&other.lattice)))
    }

    /// The subgroup presented as an abstract group, `H = M / L`.
    pub fn as_group(&self) -> Group {
        self.group.quotient_lattice_inside(&self.lattice).0
    }

    /// Invariant factors of `G / H`.
    pub fn quotient_description(&self) -> String {
        Group::from_presentation(self.group.rank(), self.lattice.basis_matrix())
            .expect("valid presentation")
            .describe()
    }
}

impl Group {
    /// Presentation of the subgroup with lattice `m` (containing the relations)
    /// in coordinates of a basis of `m`; returns the group and the basis matrix.
    fn quotient_lattice_inside(&self, m: &Lattice) -> (Group, IntMatrix) {
        let basis = m.basis_matrix();
        let rels: Vec<Vec<BigInt>> = self
            .relation_lattice()
            .basis()
            .iter()
            .map(|r| m.solve(r).expect("relations lie in the subgroup lattice"))
            .collect();
        let k = m.rank();
        let g = Group::from_presentation(k, IntMatrix::from_columns(k, &rels)).expect("valid");
        (g, basis)
    }
}

impl PartialEq for Subgroup {
    fn eq(&self, other: &Self) -> bool {
        self.group.same_as(&other.group) && self.lattice == other.lattice
    }
}

impl Eq for Subgroup {}

impl fmt::Debug for Subgroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Subgroup{:?}", self.lattice.basis_matrix())
    }
}

/// The canonical projection `G -> G/H`. Both groups share the ambient `Z^n`,
/// so projection is re-reduction of the lift.
#[derive(Clone, Debug)]
pub struct Projection {
    pub source: Group,
    pub target: Group,
}

impl Projection {
    pub fn apply(&self, x: &Element) -> Result<Element> {
        self.source.check_same(&x.group)?;
        self.target.element(x.coords.clone())
    }

    /// Full preimage of a subgroup of the target.
    pub fn pull_back(&self, h: &Subgroup) -> Result<Subgroup> {
        self.target.check_same(&h.group)?;
        Ok(Subgroup::from_lattice(&self.source, h.lattice.clone()))
    }

    /// Image of a subgroup of the source.
    pub fn push_forward(&self, h: &Subgroup) -> Result<Subgroup> {
        self.source.check_same(&h.group)?;
        let lat = h.lattice.join(self.target.relation_lattice());
        Ok(Subgroup::from_lattice(&self.target, lat))
    }
}

/// An endomorphism given by an integer matrix acting on lifts.
#[derive(Clone)]
pub struct Endo {
    group: Group,
    matrix: IntMatrix,
}

impl Endo {
    /// Checks that `A L ⊆ L` column by column.
    pub fn new(group: &Group, matrix: IntMatrix) -> Result<Endo> {
        let n = group.rank();
        if matrix.rows() != n || matrix.cols() != n {
            return Err(Error::DimensionMismatch(format!(
                "endomorphism matrix is {}x{}, ambient rank is {}",
                matrix.rows(),
                matrix.cols(),
                n
            )));
        }
        for r in group.relation_lattice().basis() {
            let image = matrix.mul_vec(r);
            if !group.relation_lattice().contains(&image) {
                return Err(Error::NotWellDefined(format!(
                    "relation {:?} maps outside the relation lattice",
                    r.iter().map(|v| v.to_string()).collect::<Vec<_>>()
                )));
            }
        }
        Ok(Endo { group: group.clone(), matrix })
    }

    pub fn from_rows<R: AsRef<[i64]>>(group: &Group, rows: &[R]) -> Result<Endo> {
        Self::new(group, IntMatrix::from_rows(rows))
    }

    pub fn identity(group: &Group) -> Endo {
        Endo { group: group.clone(), matrix: IntMatrix::identity(group.rank()) }
    }

    pub fn zero(group: &Group) -> Endo {
        Endo { group: group.clone(), matrix: IntMatrix::zeros(group.rank(), group.rank()) }
    }

    pub fn group(&self) -> &Group {
        &self.group
    }

    pub fn matrix(&self) -> &IntMatrix {
        &self.matrix
    }

    pub fn apply(&self, x: &Element) -> Result<Element> {
        self.group.check_same(&x.group)?;
        Ok(Element { coords: self.apply_coords(&x.coords), group: self.group.clone() })
    }

    /// Canonical form of `A x` for a lift `x`.
    pub fn apply_coords(&self, x: &[BigInt]) -> Vec<BigInt> {
        self.group.reduce(&self.matrix.mul_vec(x))
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &Endo) -> Result<Endo> {
        self.group.check_same(&other.group)?;
        Ok(Endo { group: self.group.clone(), matrix: &self.matrix * &other.matrix })
    }

    pub fn power(&self, k: u64) -> Endo {
        Endo { group: self.group.clone(), matrix: self.matrix.pow(k) }
    }

    /// `self - other`.
    pub fn sub(&self, other: &Endo) -> Result<Endo> {
        self.group.check_same(&other.group)?;
        Ok(Endo { group: self.group.clone(), matrix: self.matrix.sub(&other.matrix) })
    }

    /// `φ^k - id`.
    pub fn power_minus_identity(&self, k: u64) -> Endo {
        let m = self.matrix.pow(k).sub(&IntMatrix::identity(self.group.rank()));
        Endo { group: self.group.clone(), matrix: m }
    }

    pub fn is_zero(&self) -> bool {
        self.matrix
            .columns()
            .iter()
            .all(|c| self.group.relation_lattice().contains(c))
    }

    /// Equality as maps on the group.
    pub fn same_map(&self, other: &Endo) -> bool {
        self.group.same_as(&other.group) && self.sub(other).map(|d| d.is_zero()).unwrap_or(false)
    }

    pub fn kernel(&self) -> Subgroup {
        self.preimage(&self.group.trivial_subgroup()).expect("same group")
    }

    /// `{x : φ(x) ∈ H}`.
    pub fn preimage(&self, h: &Subgroup) -> Result<Subgroup> {
        self.group.check_same(&h.group)?;
        Ok(Subgroup::from_lattice(&self.group, h.lattice.preimage(&self.matrix)))
    }

    pub fn image(&self) -> Subgroup {
        let gens = self.matrix.columns();
        self.group.subgroup(&gens).expect("dimensions agree")
    }

    /// `φ(H)`.
    pub fn image_of(&self, h: &Subgroup) -> Result<Subgroup> {
        self.group.check_same(&h.group)?;
        let gens: Vec<Vec<BigInt>> =
            h.lattice.basis().iter().map(|b| self.matrix.mul_vec(b)).collect();
        self.group.subgroup(&gens)
    }

    pub fn is_invariant(&self, h: &Subgroup) -> bool {
        h.lattice.basis().iter().all(|b| h.lattice.contains(&self.matrix.mul_vec(b)))
    }

    pub fn is_surjective(&self) -> bool {
        self.image().is_whole()
    }

    pub fn is_injective(&self) -> bool {
        self.kernel().is_trivial()
    }

    /// Induced endomorphism on `G/H`; fails unless `φ(H) ⊆ H`.
    pub fn induce(&self, h: &Subgroup) -> Result<(Endo, Projection)> {
        self.group.check_same(&h.group)?;
        if !self.is_invariant(h) {
            return Err(Error::NotInvariant);
        }
        let (q, proj) = self.group.quotient(h)?;
        let e = Endo::new(&q, self.matrix.clone())?;
        Ok((e, proj))
    }

    /// Restriction to an invariant subgroup, presented on a basis of its lattice.
    pub fn restrict(&self, h: &Subgroup) -> Result<Restriction> {
        self.group.check_same(&h.group)?;
        if !self.is_invariant(h) {
            return Err(Error::NotInvariant);
        }
        let (sub, basis) = self.group.quotient_lattice_inside(&h.lattice);
        let k = basis.cols();
        let cols: Vec<Vec<BigInt>> = (0..k)
            .map(|j| {
                let img = self.matrix.mul_vec(&basis.column(j));
                h.lattice.solve(&img).expect("invariant subgroup")
            })
            .collect();
        let endo = Endo::new(&sub, IntMatrix::from_columns(k, &cols))?;
        Ok(Restriction { endo, embedding: basis, ambient: self.group.clone() })
    }

    /// Union of the kernels of all powers; the increasing chain is iterated
    /// until two consecutive terms agree.
    pub fn hyperkernel(&self) -> Subgroup {
        let mut current = self.kernel();
        let mut power = self.clone();
        loop {
            power = power.compose(self).expect("same group");
            let next = power.kernel();
            if next == current {
                return current;
            }
            current = next;
        }
    }

    /// Action on the free quotient `G/t(G) = Z^r`, as an `r x r` matrix.
    pub fn free_part(&self) -> IntMatrix {
        let r = self.group.free_rank();
        let (_, proj) = self.group.free_quotient();
        let mut m = IntMatrix::zeros(r, r);
        for j in 0..r {
            let img = proj.mul_vec(&self.matrix.mul_vec(&self.group.free_lift(j)));
            for i in 0..r {
                m[(i, j)] = img[i].clone();
            }
        }
        m
    }

    /// Images of the torsion generators, the key used to detect repeats in
    /// the power sequence restricted to `t(G)`.
    fn torsion_action_key(&self, gens: &[(Vec<BigInt>, BigInt)]) -> Vec<Vec<BigInt>> {
        gens.iter().map(|(g, _)| self.apply_coords(g)).collect()
    }

    /// Pre-period and period of the sequence `φ^k` restricted to `t(G)`,
    /// or `None` if no repeat occurs within `budget` powers.
    pub fn torsion_power_cycle(&self, budget: usize) -> Option<(u64, u64)> {
        let gens = self.group.torsion_generators();
        if gens.is_empty() {
            return Some((0, 1));
        }
        let mut seen: HashMap<Vec<Vec<BigInt>>, u64> = HashMap::new();
        let mut power = Endo::identity(&self.group);
        for k in 0..=budget as u64 {
            let key = power.torsion_action_key(&gens);
            if let Some(&first) = seen.get(&key) {
                return Some((first, k - first));
            }
            seen.insert(key, k);
            power = self.compose(&power).expect("same group");
            // keep entries small: only the action modulo the relations matters
            power.matrix = IntMatrix::from_columns(
                self.group.rank(),
                &power.matrix.columns().iter().map(|c| self.group.reduce(c)).collect::<Vec<_>>(),
            );
        }
        None
    }
}

impl fmt::Debug for Endo {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Endo{:?} on {:?}", self.matrix, self.group)
    }
}

/// `φ|_H` presented on a basis of the lattice of `H`.
#[derive(Clone, Debug)]
pub struct Restriction {
    pub endo: Endo,
    /// `n x k` matrix mapping restricted coordinates to ambient lifts.
    pub embedding: IntMatrix,
    pub ambient: Group,
}

impl Restriction {
    pub fn group(&self) -> &Group {
        self.endo.group()
    }

    /// Image in the ambient group of a subgroup of the restricted group.
    pub fn embed_subgroup(&self, h: &Subgroup) -> Result<Subgroup> {
        self.endo.group.check_same(&h.group)?;
        let gens: Vec<Vec<BigInt>> =
            h.lattice.basis().iter().map(|b| self.embedding.mul_vec(b)).collect();
        self.ambient.subgroup(&gens)
    }

    /// Preimage in the restricted group of an ambient subgroup, i.e. `K ∩ H`
    /// expressed in restricted coordinates.
    pub fn pull_subgroup(&self, k: &Subgroup) -> Result<Subgroup> {
        self.ambient.check_same(&k.group)?;
        let lat = k.lattice.preimage(&self.embedding);
        let g = self.endo.group.clone();
        let lat = lat.join(g.relation_lattice());
        Ok(Subgroup::from_lattice(&g, lat))
    }

    pub fn embed_coords(&self, x: &[BigInt]) -> Vec<BigInt> {
        self.ambient.reduce(&self.embedding.mul_vec(x))
    }
}

/// Deduplicated finite set of canonical coordinate vectors.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct ElementSet {
    items: Vec<Vec<BigInt>>,
}

impl ElementSet {
    pub fn from_coords(mut items: Vec<Vec<BigInt>>) -> ElementSet {
        items.sort();
        items.dedup();
        ElementSet { items }
    }

    /// Reduces each lift in `group` and deduplicates.
    pub fn in_group<R: AsRef<[i64]>>(group: &Group, items: &[R]) -> Result<ElementSet> {
        let mut v = Vec::with_capacity(items.len());
        for r in items {
            v.push(group.element_i64(r.as_ref())?.into_coords());
        }
        Ok(Self::from_coords(v))
    }

    pub fn from_elements(items: &[Element]) -> ElementSet {
        Self::from_coords(items.iter().map(|e| e.coords.clone()).collect())
    }

    pub fn len(&self) -> usize {
        self.items.len()
    }

    pub fn is_empty(&self) -> bool {
        self.items.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = &Vec<BigInt>> {
        self.items.iter()
    }

    pub fn as_slice(&self) -> &[Vec<BigInt>] {
        &self.items
    }

    pub fn contains(&self, x: &[BigInt]) -> bool {
        self.items.binary_search_by(|p| p.as_slice().cmp(x)).is_ok()
    }

    pub fn is_subset(&self, other: &ElementSet) -> bool {
        self.items.iter().all(|x| other.contains(x))
    }

    pub fn contains_zero(&self) -> bool {
        self.items.iter().any(|x| x.iter().all(Zero::is_zero))
    }
}

/// Least common multiple of a list of periods.
pub fn lcm_all<I: IntoIterator<Item = u64>>(it: I) -> u64 {
    it.into_iter().fold(1u64, |acc, d| acc.lcm(&d))
}
