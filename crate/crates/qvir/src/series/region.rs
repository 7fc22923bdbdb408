use std::fmt;

/// Rectangle of tracked degrees: `0 ≤ dΛ ≤ lmax`, `xmin ≤ dx ≤ xmax`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct DegreeWindow {
    pub lmax: i32,
    pub xmin: i32,
    pub xmax: i32,
}

impl DegreeWindow {
    pub fn new(lmax: i32, xmin: i32, xmax: i32) -> DegreeWindow {
        DegreeWindow { lmax, xmin, xmax }
    }

    pub fn contains(&self, l: i32, x: i32) -> bool {
        (0..=self.lmax).contains(&l) && (self.xmin..=self.xmax).contains(&x)
    }

    pub fn is_valid(&self) -> bool {
        self.lmax >= 0 && self.xmin <= 0 && 0 <= self.xmax
    }
}

impl fmt::Display for DegreeWindow {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "lmax={} x∈[{}, {}]", self.lmax, self.xmin, self.xmax)
    }
}

/// Stand-in for "no upper edge" on exact polynomials.
pub const UNBOUNDED: i32 = 1 << 28;

/// Where a series lives and what it knows.
///
/// Coordinates are `l = dΛ` and the height `h = dx + depth·l`. Coefficients
/// can be nonzero only for `l ≥ lmin` and `h ≥ hmin`; they are known exactly
/// for every `l ≤ lend`, `h ≤ hend` (everything below the support is known
/// to vanish). Products add the lower edges and keep the smaller relative
/// upper edges, which is exactly the set of coefficients a convolution
/// determines.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Region {
    pub depth: i32,
    pub lmin: i32,
    pub hmin: i32,
    pub lend: i32,
    pub hend: i32,
}

fn sat(a: i32, b: i32) -> i32 {
    if a >= UNBOUNDED || b >= UNBOUNDED {
        UNBOUNDED
    } else {
        a + b
    }
}

fn sat_sub(a: i32, b: i32) -> i32 {
    if a >= UNBOUNDED {
        UNBOUNDED
    } else {
        a - b
    }
}

impl Region {
    /// Depth-1 region anchored at the origin that certifies `w`.
    pub fn for_window(w: &DegreeWindow) -> Region {
        Region::with_depth_for(w, 1)
    }

    pub fn with_depth_for(w: &DegreeWindow, depth: i32) -> Region {
        Region { depth, lmin: 0, hmin: 0, lend: w.lmax, hend: w.xmax + depth * w.lmax }
    }

    /// Anchored at the origin with the given upper edges.
    pub fn anchored(depth: i32, lend: i32, hend: i32) -> Region {
        Region { depth, lmin: 0, hmin: 0, lend, hend }
    }

    /// Support of a single monomial Λ^l x^x, with no upper edge.
    pub fn point(l: i32, x: i32, depth: i32) -> Region {
        Region { depth, lmin: l, hmin: x + depth * l, lend: UNBOUNDED, hend: UNBOUNDED }
    }

    pub fn h(&self, l: i32, x: i32) -> i32 {
        x + self.depth * l
    }

    pub fn is_bounded(&self) -> bool {
        self.lend < UNBOUNDED && self.hend < UNBOUNDED
    }

    /// True if the coefficient at `(l, x)` is determined.
    pub fn known(&self, l: i32, x: i32) -> bool {
        l <= self.lend && self.h(l, x) <= self.hend
    }

    /// True if `(l, x)` may carry a nonzero coefficient.
    pub fn in_support(&self, l: i32, x: i32) -> bool {
        l >= self.lmin && self.h(l, x) >= self.hmin
    }

    /// Same set, described with a larger depth.
    pub fn deepen(&self, depth: i32) -> Region {
        assert!(depth >= self.depth, "depth can only grow");
        let extra = depth - self.depth;
        Region {
            depth,
            lmin: self.lmin,
            hmin: self.hmin + extra * self.lmin,
            lend: self.lend,
            hend: sat(self.hend, extra * self.lmin),
        }
    }

    /// Upper edges measured from the lower edges.
    pub fn relative_ends(&self) -> (i32, i32) {
        (sat_sub(self.lend, self.lmin), sat_sub(self.hend, self.hmin))
    }

    /// The region on which a product is determined.
    pub fn product(&self, o: &Region) -> Region {
        let d = self.depth.max(o.depth);
        let (a, b) = (self.deepen(d), o.deepen(d));
        let (al, ah) = a.relative_ends();
        let (bl, bh) = b.relative_ends();
        let lmin = a.lmin + b.lmin;
        let hmin = a.hmin + b.hmin;
        Region { depth: d, lmin, hmin, lend: sat(al.min(bl), lmin), hend: sat(ah.min(bh), hmin) }
    }

    /// The region on which a sum is determined.
    pub fn sum(&self, o: &Region) -> Region {
        let d = self.depth.max(o.depth);
        let (a, b) = (self.deepen(d), o.deepen(d));
        Region {
            depth: d,
            lmin: a.lmin.min(b.lmin),
            hmin: a.hmin.min(b.hmin),
            lend: a.lend.min(b.lend),
            hend: a.hend.min(b.hend),
        }
    }

    /// Region after multiplying by Λ^j x^k.
    pub fn shifted(&self, j: i32, k: i32) -> Region {
        let dh = k + self.depth * j;
        Region {
            depth: self.depth,
            lmin: self.lmin + j,
            hmin: self.hmin + dh,
            lend: sat(self.lend, j),
            hend: sat(self.hend, dh),
        }
    }

    /// Upper edges capped at those of `o`.
    pub fn capped(&self, o: &Region) -> Region {
        let o = o.deepen(o.depth.max(self.depth));
        let s = self.deepen(o.depth);
        Region { lend: s.lend.min(o.lend), hend: s.hend.min(o.hend), ..s }
    }

    /// True if every coefficient of the rectangle `w` is determined.
    pub fn certifies(&self, w: &DegreeWindow) -> bool {
        w.lmax <= self.lend && self.h(w.lmax.max(0), w.xmax) <= self.hend
    }

    /// Largest rectangle with the given `xmin` that the region determines.
    pub fn certified_window(&self, xmin: i32) -> DegreeWindow {
        DegreeWindow { lmax: self.lend, xmin, xmax: self.hend - self.depth * self.lend }
    }

    /// Every key that may be nonzero and is determined, in (l, x) order.
    pub fn keys(&self) -> Vec<(i32, i32)> {
        assert!(self.is_bounded(), "keys of an unbounded region");
        let mut out = Vec::new();
        for l in self.lmin..=self.lend {
            let lo = self.hmin - self.depth * l;
            let hi = self.hend - self.depth * l;
            for x in lo..=hi {
                out.push((l, x));
            }
        }
        out
    }
}

impl fmt::Display for Region {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "l∈[{}, {}], x+{}l∈[{}, {}]",
            self.lmin, self.lend, self.depth, self.hmin, self.hend
        )
    }
}
