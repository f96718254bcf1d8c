//! Finite chain rings with dense element encodings.

use std::fmt;

use super::{hensel_lift, is_prime, poly::graeffe_identity_holds, prime_power, AlgebraError, Elem, Field};

/// Which concrete chain ring a [`Ring`] is.
#[derive(Clone, Debug, PartialEq, Eq, serde::Serialize)]
pub enum RingFamily {
    /// Integers modulo `p^m`.
    Zpm { p: u32, m: u32 },
    /// `F_q + uF_q` with `u^2 = 0`, `q = p^f`.
    Fqu { p: u32, f: u32 },
    /// `GR(4, r) = Z_4[x]/(h)`; `modulus` holds `h` low-degree first.
    Gr4 { r: u32, modulus: Vec<u8> },
}

/// Rings this small get full operation tables.
const TABLE_LIMIT: u32 = 256;
const SIZE_LIMIT: u32 = 1 << 20;

#[derive(Clone, Debug)]
struct Tables {
    add: Vec<Elem>,
    mul: Vec<Elem>,
    neg: Vec<Elem>,
}

/// A finite chain ring `R` with maximal ideal `(gamma)`, depth `e`
/// (`gamma^e = 0`) and residue field of size `q`, so `|R| = q^e`.
///
/// Elements are the integers `0..size()`; `0` and `1` are always the ring's
/// zero and one. Arithmetic tables are built for rings of order at most 256.
#[derive(Clone, Debug)]
pub struct Ring {
    family: RingFamily,
    field: Option<Field>,
    size: u32,
    q: u32,
    p: u32,
    depth: u32,
    gamma: Elem,
    valuation: Vec<u8>,
    weight: Vec<u32>,
    units: Vec<Elem>,
    tables: Option<Tables>,
}

impl PartialEq for Ring {
    fn eq(&self, other: &Self) -> bool {
        self.family == other.family
    }
}
impl Eq for Ring {}

impl Ring {
    /// `Z_{p^m}`.
    pub fn zpm(p: u32, m: u32) -> Result<Self, AlgebraError> {
        if !is_prime(p) {
            return Err(AlgebraError::NotPrime(p));
        }
        if m == 0 {
            return Err(AlgebraError::BadParameters("m must be at least 1".into()));
        }
        let size = p.checked_pow(m).filter(|&s| s <= SIZE_LIMIT).ok_or_else(|| {
            AlgebraError::BadParameters(format!("Z_{p}^{m} is too large"))
        })?;
        let gamma = if m == 1 { 0 } else { p };
        Self::build(RingFamily::Zpm { p, m }, None, size, p, p, m, gamma)
    }

    /// `Z_4`.
    pub fn z4() -> Self {
        Self::zpm(2, 2).expect("Z4")
    }

    /// `F_q + uF_q` for a prime power `q`.
    pub fn fqu(q: u32) -> Result<Self, AlgebraError> {
        let (p, f) = prime_power(q).ok_or(AlgebraError::NotPrimePower(q))?;
        let field = Field::new(p, f)?;
        let size = q.checked_mul(q).filter(|&s| s <= SIZE_LIMIT).ok_or_else(|| {
            AlgebraError::BadParameters(format!("F_{q}+uF_{q} is too large"))
        })?;
        Self::build(RingFamily::Fqu { p, f }, Some(field), size, q, p, 2, q)
    }

    /// `F_2 + uF_2`, the dual numbers over the binary field.
    pub fn f2u() -> Self {
        Self::fqu(2).expect("F2+uF2")
    }

    /// `GR(4, r)` built on the Hensel lift of the built-in binary primitive
    /// polynomial of degree `r`.
    pub fn gr4(r: u32) -> Result<Self, AlgebraError> {
        let f = Field::new(2, r)?;
        let binary: Vec<u8> = f.modulus().iter().map(|&c| c as u8).collect();
        let h = hensel_lift(&binary)?;
        Self::gr4_with_modulus(h)
    }

    /// `GR(4, r) = Z_4[x]/(h)` for a given basic primitive Hensel lift `h`.
    pub fn gr4_with_modulus(h: Vec<u8>) -> Result<Self, AlgebraError> {
        if h.len() < 2 || h.iter().any(|&c| c > 3) || *h.last().unwrap() != 1 {
            return Err(AlgebraError::BadModulus("monic Z4 polynomial expected".into()));
        }
        let r = (h.len() - 1) as u32;
        let f: Vec<u8> = h.iter().map(|c| c % 2).collect();
        Field::with_modulus(2, f.iter().map(|&c| c as u32).collect())?;
        if !graeffe_identity_holds(&h, &f) {
            return Err(AlgebraError::HenselCheck);
        }
        let size = 4u32
            .checked_pow(r)
            .filter(|&s| s <= SIZE_LIMIT)
            .ok_or_else(|| AlgebraError::BadParameters(format!("GR(4,{r}) is too large")))?;
        Self::build(RingFamily::Gr4 { r, modulus: h }, None, size, 1 << r, 2, 2, 2)
    }

    /// Parse the command-line ring syntax: `z4`, `f2u`, `zpm:p,m`, `fqu:q`, `gr4:r`.
    pub fn parse_spec(spec: &str) -> Result<Self, AlgebraError> {
        let spec = spec.trim().to_ascii_lowercase();
        let bad = || AlgebraError::BadParameters(format!("unknown ring {spec:?}"));
        let nums = |s: &str| -> Result<Vec<u32>, AlgebraError> {
            s.split(',').map(|t| t.trim().parse::<u32>().map_err(|_| bad())).collect()
        };
        match spec.as_str() {
            "z4" => return Ok(Self::z4()),
            "f2u" | "f2+uf2" => return Ok(Self::f2u()),
            _ => {}
        }
        let (head, tail) = spec.split_once(':').ok_or_else(bad)?;
        let args = nums(tail)?;
        match (head, args.as_slice()) {
            ("zpm", [p, m]) => Self::zpm(*p, *m),
            ("fqu", [q]) => Self::fqu(*q),
            ("gr4", [r]) => Self::gr4(*r),
            _ => Err(bad()),
        }
    }

    fn build(
        family: RingFamily,
        field: Option<Field>,
        size: u32,
        q: u32,
        p: u32,
        depth: u32,
        gamma: Elem,
    ) -> Result<Self, AlgebraError> {
        let mut ring = Ring {
            family,
            field,
            size,
            q,
            p,
            depth,
            gamma,
            valuation: Vec::new(),
            weight: Vec::new(),
            units: Vec::new(),
            tables: None,
        };
        ring.valuation = (0..size).map(|x| ring.compute_valuation(x)).collect();
        let top = q.pow(depth - 1);
        let low = if depth >= 2 { (q - 1) * q.pow(depth - 2) } else { 1 };
        ring.weight = ring
            .valuation
            .iter()
            .map(|&v| match v as u32 {
                v if v == depth => 0,
                v if v + 1 == depth => top,
                _ => low,
            })
            .collect();
        ring.units = (0..size).filter(|&x| ring.valuation[x as usize] == 0).collect();
        if size <= TABLE_LIMIT {
            let n = size as usize;
            let mut add = vec![0; n * n];
            let mut mul = vec![0; n * n];
            for a in 0..size {
                for b in 0..size {
                    add[a as usize * n + b as usize] = ring.add_raw(a, b);
                    mul[a as usize * n + b as usize] = ring.mul_raw(a, b);
                }
            }
            let neg = (0..size).map(|a| ring.neg_raw(a)).collect();
            ring.tables = Some(Tables { add, mul, neg });
        }
        Ok(ring)
    }

    pub fn family(&self) -> &RingFamily {
        &self.family
    }
    /// `|R|`.
    pub fn size(&self) -> u32 {
        self.size
    }
    /// Size of the residue field.
    pub fn q(&self) -> u32 {
        self.q
    }
    /// Characteristic of the residue field.
    pub fn residue_characteristic(&self) -> u32 {
        self.p
    }
    /// Nilpotency index `e` of the maximal ideal.
    pub fn depth(&self) -> u32 {
        self.depth
    }
    /// Generator of the maximal ideal.
    pub fn gamma(&self) -> Elem {
        self.gamma
    }
    pub fn unit_count(&self) -> u32 {
        self.units.len() as u32
    }
    pub fn units(&self) -> &[Elem] {
        &self.units
    }
    pub fn residue_field(&self) -> Option<&Field> {
        self.field.as_ref()
    }
    pub fn elements(&self) -> impl Iterator<Item = Elem> {
        0..self.size
    }
    pub fn contains(&self, x: Elem) -> bool {
        x < self.size
    }
    pub fn check(&self, x: Elem) -> Result<Elem, AlgebraError> {
        if self.contains(x) {
            Ok(x)
        } else {
            Err(AlgebraError::NotAnElement { elem: x, size: self.size })
        }
    }
    /// Order-4 chain rings: `Z_4`, `F_2 + uF_2` (and `GR(4,1)`).
    pub fn is_order_four(&self) -> bool {
        self.size == 4 && self.depth == 2
    }

    pub fn name(&self) -> String {
        match &self.family {
            RingFamily::Zpm { p, m } if *p == 2 && *m == 2 => "Z4".into(),
            RingFamily::Zpm { p, m } => format!("Z_{}", p.pow(*m)),
            RingFamily::Fqu { .. } => format!("F_{0}+uF_{0}", self.q),
            RingFamily::Gr4 { r, .. } => format!("GR(4,{r})"),
        }
    }

    /// Largest `i` with `x ∈ (gamma^i)`; `depth()` for zero.
    pub fn valuation(&self, x: Elem) -> u32 {
        self.valuation[x as usize] as u32
    }

    pub fn is_unit(&self, x: Elem) -> bool {
        self.valuation[x as usize] == 0
    }

    /// Homogeneous weight: `0`, `q^(e-1)` on `(gamma^(e-1)) \ {0}`, and
    /// `(q-1)q^(e-2)` elsewhere. On fields (`e = 1`) this is the Hamming weight.
    pub fn hom_weight(&self, x: Elem) -> u32 {
        self.weight[x as usize]
    }

    /// Checked variant of [`Ring::hom_weight`].
    pub fn try_hom_weight(&self, x: Elem) -> Result<u32, AlgebraError> {
        self.check(x).map(|x| self.hom_weight(x))
    }

    /// Largest element weight, `q^(e-1)`.
    pub fn max_weight(&self) -> u32 {
        self.q.pow(self.depth - 1)
    }

    /// Sorted elements of the principal ideal `Rx`.
    pub fn principal_ideal(&self, x: Elem) -> Vec<Elem> {
        let mut seen = vec![false; self.size as usize];
        let mut out = Vec::new();
        for r in self.elements() {
            let y = self.mul(r, x);
            if !seen[y as usize] {
                seen[y as usize] = true;
                out.push(y);
            }
        }
        out.sort_unstable();
        out
    }

    #[inline]
    pub fn add(&self, a: Elem, b: Elem) -> Elem {
        match &self.tables {
            Some(t) => t.add[(a * self.size + b) as usize],
            None => self.add_raw(a, b),
        }
    }

    #[inline]
    pub fn mul(&self, a: Elem, b: Elem) -> Elem {
        match &self.tables {
            Some(t) => t.mul[(a * self.size + b) as usize],
            None => self.mul_raw(a, b),
        }
    }

    #[inline]
    pub fn neg(&self, a: Elem) -> Elem {
        match &self.tables {
            Some(t) => t.neg[a as usize],
            None => self.neg_raw(a),
        }
    }

    #[inline]
    pub fn sub(&self, a: Elem, b: Elem) -> Elem {
        self.add(a, self.neg(b))
    }

    pub fn pow(&self, a: Elem, mut k: u64) -> Elem {
        let mut base = a;
        let mut acc = 1;
        while k > 0 {
            if k & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            k >>= 1;
        }
        acc
    }

    /// Multiplicative inverse of a unit.
    pub fn inv(&self, a: Elem) -> Option<Elem> {
        if !self.is_unit(a) {
            return None;
        }
        Some(self.pow(a, self.unit_count() as u64 - 1))
    }

    /// `gamma^k` (zero once `k >= depth`).
    pub fn gamma_pow(&self, k: u32) -> Elem {
        if k >= self.depth {
            0
        } else {
            self.pow(self.gamma, k as u64)
        }
    }

    /// Some `t` with `t * d = x`, if one exists.
    pub fn div_exact(&self, x: Elem, d: Elem) -> Option<Elem> {
        if x == 0 {
            return Some(0);
        }
        if self.is_unit(d) {
            return self.inv(d).map(|i| self.mul(x, i));
        }
        // write d = unit * gamma^v; then x must lie in (gamma^v)
        let v = self.valuation(d);
        if self.valuation(x) < v {
            return None;
        }
        self.elements().find(|&t| self.mul(t, d) == x)
    }

    /// Smallest-encoded representative of `x + (gamma^v)` and the `t` with
    /// `x - t * gamma^v` equal to it.
    pub fn reduce_mod_gamma_pow(&self, x: Elem, v: u32) -> (Elem, Elem) {
        let g = self.gamma_pow(v);
        let mut best = (x, 0);
        for t in self.elements() {
            let r = self.sub(x, self.mul(t, g));
            if r < best.0 {
                best = (r, t);
            }
        }
        best
    }

    /// A transversal of `R / (gamma)`, containing 0 and 1.
    pub fn residue_representatives(&self) -> Vec<Elem> {
        match &self.family {
            RingFamily::Zpm { p, .. } => (0..*p).collect(),
            RingFamily::Fqu { .. } => (0..self.q).collect(),
            RingFamily::Gr4 { r, .. } => (0..(1u32 << r))
                .map(|bits| (0..*r).filter(|i| bits >> i & 1 == 1).map(|i| 4u32.pow(i)).sum())
                .collect(),
        }
    }

    /// Representatives `λ` giving each value `λ·gamma^v` exactly once.
    pub fn coefficient_transversal(&self, v: u32) -> Vec<Elem> {
        let g = self.gamma_pow(v);
        let mut seen = vec![false; self.size as usize];
        let mut out = Vec::new();
        for l in self.elements() {
            let y = self.mul(l, g);
            if !seen[y as usize] {
                seen[y as usize] = true;
                out.push(l);
            }
        }
        out
    }

    fn compute_valuation(&self, x: Elem) -> u8 {
        if x == 0 {
            return self.depth as u8;
        }
        match &self.family {
            RingFamily::Zpm { p, .. } => {
                let mut v = 0;
                let mut y = x;
                while y % p == 0 {
                    y /= p;
                    v += 1;
                }
                v
            }
            RingFamily::Fqu { .. } => {
                if x % self.q != 0 {
                    0
                } else {
                    1
                }
            }
            RingFamily::Gr4 { .. } => {
                if self.gr4_digits(x).iter().any(|d| d % 2 == 1) {
                    0
                } else {
                    1
                }
            }
        }
    }

    fn gr4_digits(&self, x: Elem) -> Vec<u8> {
        let r = match &self.family {
            RingFamily::Gr4 { r, .. } => *r,
            _ => unreachable!(),
        };
        (0..r).map(|i| ((x >> (2 * i)) & 3) as u8).collect()
    }

    /// Coefficient vector of a `GR(4, r)` element in the basis `1, ξ, …, ξ^(r-1)`.
    pub fn gr4_coefficients(&self, x: Elem) -> Result<Vec<u8>, AlgebraError> {
        match &self.family {
            RingFamily::Gr4 { .. } => Ok(self.gr4_digits(x)),
            _ => Err(AlgebraError::WrongFamily("a Galois ring GR(4, r)")),
        }
    }

    /// Element with the given `GR(4, r)` coefficients (reduced modulo `h`).
    pub fn gr4_from_poly(&self, poly: &[u8]) -> Result<Elem, AlgebraError> {
        let (r, h) = match &self.family {
            RingFamily::Gr4 { r, modulus } => (*r as usize, modulus),
            _ => return Err(AlgebraError::WrongFamily("a Galois ring GR(4, r)")),
        };
        let mut c: Vec<u8> = poly.iter().map(|x| x % 4).collect();
        for deg in (r..c.len()).rev() {
            let lead = c[deg];
            if lead == 0 {
                continue;
            }
            for (i, &m) in h.iter().enumerate() {
                let idx = deg - r + i;
                c[idx] = (c[idx] + (4 - lead) * m) % 4;
            }
        }
        c.resize(r, 0);
        Ok(c.iter().enumerate().map(|(i, &d)| (d as u32) << (2 * i)).sum())
    }

    fn add_raw(&self, a: Elem, b: Elem) -> Elem {
        match &self.family {
            RingFamily::Zpm { .. } => (a + b) % self.size,
            RingFamily::Fqu { .. } => {
                let f = self.field.as_ref().unwrap();
                let q = self.q;
                f.add(a % q, b % q) + q * f.add(a / q, b / q)
            }
            RingFamily::Gr4 { r, .. } => {
                (0..*r).map(|i| ((((a >> (2 * i)) & 3) + ((b >> (2 * i)) & 3)) & 3) << (2 * i)).sum()
            }
        }
    }

    fn neg_raw(&self, a: Elem) -> Elem {
        match &self.family {
            RingFamily::Zpm { .. } => (self.size - a) % self.size,
            RingFamily::Fqu { .. } => {
                let f = self.field.as_ref().unwrap();
                f.neg(a % self.q) + self.q * f.neg(a / self.q)
            }
            RingFamily::Gr4 { r, .. } => (0..*r).map(|i| ((4 - ((a >> (2 * i)) & 3)) & 3) << (2 * i)).sum(),
        }
    }

    fn mul_raw(&self, a: Elem, b: Elem) -> Elem {
        match &self.family {
            RingFamily::Zpm { .. } => ((a as u64 * b as u64) % self.size as u64) as Elem,
            RingFamily::Fqu { .. } => {
                let f = self.field.as_ref().unwrap();
                let q = self.q;
                let (a0, a1, b0, b1) = (a % q, a / q, b % q, b / q);
                f.mul(a0, b0) + q * f.add(f.mul(a0, b1), f.mul(a1, b0))
            }
            RingFamily::Gr4 { .. } => {
                let (da, db) = (self.gr4_digits(a), self.gr4_digits(b));
                let mut prod = vec![0u8; da.len() + db.len() - 1];
                for (i, &x) in da.iter().enumerate() {
                    for (j, &y) in db.iter().enumerate() {
                        prod[i + j] = (prod[i + j] + x * y) % 4;
                    }
                }
                self.gr4_from_poly(&prod).unwrap()
            }
        }
    }

    /// Parse one element literal (see [`Ring::format_elem`]). A `#k` literal
    /// names the element with dense index `k` in any ring.
    pub fn parse_elem(&self, s: &str) -> Result<Elem, AlgebraError> {
        let t = s.trim();
        let err = || AlgebraError::Parse(t.to_string());
        if let Some(idx) = t.strip_prefix('#') {
            return self.check(idx.parse().map_err(|_| err())?);
        }
        match &self.family {
            RingFamily::Zpm { .. } => {
                let v: i64 = t.parse().map_err(|_| err())?;
                Ok(v.rem_euclid(self.size as i64) as Elem)
            }
            RingFamily::Fqu { f, .. } if *f == 1 => {
                let q = self.q as i64;
                let (mut a, mut b) = (0i64, 0i64);
                let compact: String = t.chars().filter(|c| !c.is_whitespace()).collect();
                for term in compact.split('+') {
                    if term.is_empty() {
                        return Err(err());
                    }
                    let lower = term.to_ascii_lowercase();
                    if let Some(coef) = lower.strip_suffix('x').or_else(|| lower.strip_suffix('u')) {
                        let c = if coef.is_empty() { 1 } else { coef.parse::<i64>().map_err(|_| err())? };
                        b += c;
                    } else {
                        a += lower.parse::<i64>().map_err(|_| err())?;
                    }
                }
                Ok((a.rem_euclid(q) + q * b.rem_euclid(q)) as Elem)
            }
            RingFamily::Fqu { .. } => Err(err()),
            RingFamily::Gr4 { r, .. } => {
                let coeffs: Vec<u8> = t
                    .split(',')
                    .map(|c| c.trim().parse::<i64>().map(|v| v.rem_euclid(4) as u8))
                    .collect::<Result<_, _>>()
                    .map_err(|_| err())?;
                if coeffs.len() > *r as usize {
                    return Err(err());
                }
                Ok(coeffs.iter().enumerate().map(|(i, &d)| (d as u32) << (2 * i)).sum())
            }
        }
    }

    /// Text form of an element: decimal residues for `Z_{p^m}`, `bX+a` for
    /// `F_p + uF_p` (so `F_2 + uF_2` prints as `0, 1, X, X+1`), comma-separated
    /// `Z_4` coefficients for `GR(4, r)`, and `#k` otherwise.
    pub fn format_elem(&self, x: Elem) -> String {
        match &self.family {
            RingFamily::Zpm { .. } => x.to_string(),
            RingFamily::Fqu { f, .. } if *f == 1 => {
                let (a, b) = (x % self.q, x / self.q);
                match (a, b) {
                    (a, 0) => a.to_string(),
                    (0, 1) => "X".into(),
                    (0, b) => format!("{b}X"),
                    (a, 1) => format!("X+{a}"),
                    (a, b) => format!("{b}X+{a}"),
                }
            }
            RingFamily::Fqu { .. } => format!("#{x}"),
            RingFamily::Gr4 { r, .. } if *r == 1 => x.to_string(),
            RingFamily::Gr4 { .. } => {
                self.gr4_digits(x).iter().map(|d| d.to_string()).collect::<Vec<_>>().join(",")
            }
        }
    }
}

impl fmt::Display for Ring {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name())
    }
}
