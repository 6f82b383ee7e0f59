//! PSL(2,q), PGL(2,q), PΓL(2,q) and M10 as permutation groups on the
//! projective line PG(1,q).
//!
//! Points are numbered `[x:1] -> x` for every field element `x` (in the
//! field's integer encoding) and `[1:0] -> q`.

use alloc::format;
use alloc::sync::Arc;
use alloc::vec::Vec;

use num_bigint::BigUint;

use crate::arith::prime_power;
use crate::error::{Error, Result};
use crate::field::FieldSpec;
use crate::group::{Elements, GroupHandle, Limits};
use crate::perm::{Perm, Point};

/// A normalized homogeneous pair: `[x:1]` or `[1:0]`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ProjectivePoint {
    pub x: u32,
    pub y: u32,
}

impl ProjectivePoint {
    pub fn infinity() -> Self {
        ProjectivePoint { x: 1, y: 0 }
    }

    /// Normalizes `[x:y]`; `None` for `[0:0]`.
    pub fn normalize(field: &FieldSpec, x: u32, y: u32) -> Option<Self> {
        if y == 0 {
            return (x != 0).then(Self::infinity);
        }
        let x = field.mul(x, field.inv(y)?);
        Some(ProjectivePoint { x, y: 1 })
    }

    pub fn index(self, field: &FieldSpec) -> Point {
        if self.y == 0 {
            field.size()
        } else {
            self.x
        }
    }

    pub fn from_index(field: &FieldSpec, i: Point) -> Self {
        if i == field.size() {
            Self::infinity()
        } else {
            ProjectivePoint { x: i, y: 1 }
        }
    }
}

/// The projective line over a field, as a permutation domain of size q+1.
#[derive(Debug, Clone)]
pub struct ProjectiveLine {
    field: Arc<FieldSpec>,
}

impl ProjectiveLine {
    pub fn new(field: Arc<FieldSpec>) -> Self {
        ProjectiveLine { field }
    }

    pub fn field(&self) -> &FieldSpec {
        &self.field
    }

    pub fn degree(&self) -> usize {
        self.field.size() as usize + 1
    }

    pub fn points(&self) -> impl Iterator<Item = ProjectivePoint> + '_ {
        (0..self.degree() as Point).map(|i| ProjectivePoint::from_index(&self.field, i))
    }

    /// The action of the invertible matrix `[[a, b], [c, d]]` on column
    /// vectors: `[x:y] -> [ax+by : cx+dy]`.
    pub fn matrix(&self, a: u32, b: u32, c: u32, d: u32) -> Result<Perm> {
        let f = &*self.field;
        if f.sub(f.mul(a, d), f.mul(b, c)) == 0 {
            return Err(Error::InvalidParameter(format!(
                "singular matrix [[{a},{b}],[{c},{d}]]"
            )));
        }
        let images = self
            .points()
            .map(|p| {
                let x = f.add(f.mul(a, p.x), f.mul(b, p.y));
                let y = f.add(f.mul(c, p.x), f.mul(d, p.y));
                ProjectivePoint::normalize(f, x, y)
                    .expect("invertible matrix")
                    .index(f)
            })
            .collect();
        Ok(Perm::from_images_unchecked(images))
    }

    /// `[x:y] -> [x^r : y^r]`.
    pub fn frobenius(&self) -> Perm {
        let f = &*self.field;
        let images = self
            .points()
            .map(|p| {
                ProjectivePoint::normalize(f, f.frobenius(p.x), f.frobenius(p.y))
                    .expect("nonzero point")
                    .index(f)
            })
            .collect();
        Perm::from_images_unchecked(images)
    }

    /// Generators of PSL(2,q): the two elementary transvections and
    /// `diag(w, w^-1)` for the primitive element `w`.
    pub fn psl_generators(&self) -> Vec<Perm> {
        let f = &*self.field;
        let w = f.primitive();
        let w_inv = f.inv(w).expect("nonzero");
        let mut gens = Vec::new();
        gens.push(self.matrix(1, 1, 0, 1).expect("invertible"));
        gens.push(self.matrix(1, 0, 1, 1).expect("invertible"));
        if f.size() > 3 {
            gens.push(self.matrix(w, 0, 0, w_inv).expect("invertible"));
        }
        gens
    }

    /// `diag(w, 1)`, which lies outside PSL(2,q) for odd q.
    pub fn diagonal(&self) -> Perm {
        self.matrix(self.field.primitive(), 0, 0, 1)
            .expect("invertible")
    }
}

/// The Frobenius permutation `[x:y] -> [x^r : y^r]` of PG(1,q).
pub fn frobenius_permutation(field: &FieldSpec) -> Perm {
    ProjectiveLine::new(Arc::new(field.clone())).frobenius()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ClassicalKind {
    Psl2,
    Pgl2,
    PGammaL2,
}

/// A field of size `q` with `q = r^k`, checking the preconditions shared by
/// the classical constructors.
fn line_for(q: u64) -> Result<(ProjectiveLine, u32)> {
    let (r, k) = prime_power(q).ok_or(Error::InvalidField(q))?;
    let field = FieldSpec::new(r, k)?;
    Ok((ProjectiveLine::new(Arc::new(field)), k))
}

/// PSL(2,q), PGL(2,q) or PΓL(2,q) acting on the q+1 projective points.
pub fn classical_group(kind: ClassicalKind, q: u64) -> Result<GroupHandle> {
    if q < 4 || (q % 2 == 0 && kind != ClassicalKind::Psl2) {
        return Err(Error::InvalidParameter(format!(
            "{kind:?} needs q >= 4, and odd q unless PSL"
        )));
    }
    let (line, _) = line_for(q)?;
    let mut gens = line.psl_generators();
    if kind != ClassicalKind::Psl2 {
        gens.push(line.diagonal());
    }
    if kind == ClassicalKind::PGammaL2 {
        gens.push(line.frobenius());
    }
    GroupHandle::new(gens)
}

/// Closed-form order of the classical group.
pub fn classical_order(kind: ClassicalKind, q: u64) -> Option<BigUint> {
    let (_, k) = prime_power(q)?;
    let q = BigUint::from(q);
    let base = &q * (&q * &q - 1u32);
    Some(match kind {
        ClassicalKind::Psl2 if &q % 2u32 == BigUint::from(1u32) => base / 2u32,
        ClassicalKind::Psl2 | ClassicalKind::Pgl2 => base,
        ClassicalKind::PGammaL2 => base * k,
    })
}

/// A coset `rep * socle` inside `ambient`, with `socle` normal in `ambient`.
#[derive(Debug, Clone)]
pub struct LabeledCoset {
    pub ambient: GroupHandle,
    pub socle: GroupHandle,
    pub rep: Perm,
}

impl LabeledCoset {
    pub fn new(ambient: GroupHandle, socle: GroupHandle, rep: Perm) -> Result<Self> {
        if !socle.is_subgroup_of(&ambient) {
            return Err(Error::InvalidParameter(
                "socle is not a subgroup of the ambient group".into(),
            ));
        }
        if !ambient.contains(&rep)? {
            return Err(Error::NotMember);
        }
        Ok(LabeledCoset {
            ambient,
            socle,
            rep,
        })
    }

    pub fn size(&self) -> &BigUint {
        self.socle.order()
    }

    pub fn contains(&self, g: &Perm) -> bool {
        self.socle.has(&self.rep.inverse().compose(g))
    }

    pub fn elements(&self, cap: u64) -> Result<impl Iterator<Item = Perm> + '_> {
        let inner: Elements<'_> = self.socle.elements(cap)?;
        Ok(inner.map(move |s| self.rep.compose(&s)))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum OuterKind {
    /// A PGL(2,q) element outside PSL(2,q).
    Diag,
    /// The Frobenius permutation.
    Frob,
    /// Their product.
    DiagFrob,
}

/// The coset `rep * PSL(2,q)` inside the group generated by PSL(2,q) and
/// `rep`.
pub fn outer_coset(kind: OuterKind, q: u64) -> Result<LabeledCoset> {
    if q % 2 == 0 {
        return Err(Error::InvalidParameter(format!("outer cosets need odd q, got {q}")));
    }
    let (line, k) = line_for(q)?;
    if kind != OuterKind::Diag && k < 2 {
        return Err(Error::InvalidParameter(format!(
            "{kind:?} coset needs a non-prime field, got q = {q}"
        )));
    }
    let socle = classical_group(ClassicalKind::Psl2, q)?;
    let rep = match kind {
        OuterKind::Diag => line.diagonal(),
        OuterKind::Frob => line.frobenius(),
        OuterKind::DiagFrob => line.diagonal().compose(&line.frobenius()),
    };
    let ambient = socle.join(core::slice::from_ref(&rep))?;
    LabeledCoset::new(ambient, socle, rep)
}

/// PSL(2,q) extended by the field automorphisms.
pub fn psl_frobenius(q: u64) -> Result<GroupHandle> {
    let (line, _) = line_for(q)?;
    let socle = classical_group(ClassicalKind::Psl2, q)?;
    socle.join(&[line.frobenius()])
}

/// M10 on the ten points of PG(1,9).
#[derive(Debug, Clone)]
pub struct M10 {
    pub group: GroupHandle,
    pub socle: GroupHandle,
    /// The outer representative `d * φ` that was certified.
    pub outer: Perm,
}

/// Builds M10 as `⟨PSL(2,9), d·φ⟩`. Candidates `d` are tried in a fixed
/// order (`diag(w,1)` first, then PGL(2,9)∖PSL(2,9) in enumeration order)
/// until the result has order 720 and its outer coset consists of
/// 2-elements only.
pub fn m10() -> Result<M10> {
    let (line, _) = line_for(9)?;
    let socle = classical_group(ClassicalKind::Psl2, 9)?;
    let pgl = classical_group(ClassicalKind::Pgl2, 9)?;
    let phi = line.frobenius();
    let limits = Limits::default();
    let candidates = core::iter::once(line.diagonal())
        .chain(pgl.elements(limits.enumeration)?.filter(|d| !socle.has(d)));
    for d in candidates {
        let outer = d.compose(&phi);
        let group = socle.join(core::slice::from_ref(&outer))?;
        if group.order() != &BigUint::from(720u32) {
            continue;
        }
        let coset = LabeledCoset::new(group.clone(), socle.clone(), outer.clone())?;
        let all_two = coset
            .elements(limits.enumeration)?
            .all(|g| g.is_p_element_unchecked(2));
        if all_two {
            return Ok(M10 {
                group,
                socle,
                outer,
            });
        }
    }
    Err(Error::InvalidParameter("no M10 outer representative found".into()))
}
