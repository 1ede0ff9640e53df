//! The parameter tuple `(q, t; t0, t1, t2, t3)`.
//!
//! `q` and `t` are stored through their square roots so that every shift by
//! `q^{±1/2}` or `t^{±1/2}` stays inside the rationals.

use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scalar::{int, parse_rational, rational_to_f64, Rational};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ParamPoint {
    qh: Rational,
    th: Rational,
    q: Rational,
    t: Rational,
    ts: [Rational; 4],
}

/// Parameter shifts attached to the operator actions.
///
/// Each variant names the tuple an operator expects *relative to* a base
/// tuple `(t0, t1, t2, t3)`:
/// - `DZeroSource`: `(q^{1/2}t0, q^{1/2}t1, q^{-1/2}t2, q^{-1/2}t3)`
/// - `DPlusSource`: every `t_r` times `q^{1/2}`
/// - `DMinusSource`: every `t_r` times `q^{-1/2}`
/// - `IZeroTarget`: `(t^{1/2}t0, t^{1/2}t1, t^{-1/2}t2, t^{-1/2}t3)`
/// - `IPlusTarget`: every `t_r` times `t^{-1/2}`
/// - `IMinusTarget`: every `t_r` times `t^{1/2}`
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ShiftKind {
    DZeroSource,
    DZeroSourceInverse,
    DPlusSource,
    DMinusSource,
    IZeroTarget,
    IZeroTargetInverse,
    IPlusTarget,
    IMinusTarget,
}

impl ShiftKind {
    pub fn inverse(self) -> ShiftKind {
        use ShiftKind::*;
        match self {
            DZeroSource => DZeroSourceInverse,
            DZeroSourceInverse => DZeroSource,
            DPlusSource => DMinusSource,
            DMinusSource => DPlusSource,
            IZeroTarget => IZeroTargetInverse,
            IZeroTargetInverse => IZeroTarget,
            IPlusTarget => IMinusTarget,
            IMinusTarget => IPlusTarget,
        }
    }

    pub const ALL: [ShiftKind; 8] = [
        ShiftKind::DZeroSource,
        ShiftKind::DZeroSourceInverse,
        ShiftKind::DPlusSource,
        ShiftKind::DMinusSource,
        ShiftKind::IZeroTarget,
        ShiftKind::IZeroTargetInverse,
        ShiftKind::IPlusTarget,
        ShiftKind::IMinusTarget,
    ];
}

impl ParamPoint {
    /// Builds the tuple from `q^{1/2}`, `t^{1/2}` and the four `t_r`.
    pub fn new(qh: Rational, th: Rational, ts: [Rational; 4]) -> Result<Self> {
        if qh.is_zero() {
            return Err(Error::InvalidParameter("q^{1/2} = 0".into()));
        }
        if th.is_zero() {
            return Err(Error::InvalidParameter("t^{1/2} = 0".into()));
        }
        if let Some(r) = ts.iter().position(|x| x.is_zero()) {
            return Err(Error::InvalidParameter(format!("t{r} = 0")));
        }
        let q = &qh * &qh;
        let t = &th * &th;
        Ok(ParamPoint { qh, th, q, t, ts })
    }

    pub fn qh(&self) -> &Rational {
        &self.qh
    }
    pub fn th(&self) -> &Rational {
        &self.th
    }
    pub fn q(&self) -> &Rational {
        &self.q
    }
    pub fn t(&self) -> &Rational {
        &self.t
    }
    pub fn ts(&self) -> &[Rational; 4] {
        &self.ts
    }
    pub fn t_r(&self, r: usize) -> &Rational {
        &self.ts[r]
    }

    /// `t0 t1 t2 t3`.
    pub fn t_product(&self) -> Rational {
        self.ts.iter().fold(int(1), |acc, x| acc * x)
    }

    /// True iff `|q|, |t|, |t_r| < 1`, i.e. the unit torus is a valid contour.
    pub fn is_numeric_admissible(&self) -> bool {
        let one = int(1);
        self.q.abs() < one && self.t.abs() < one && self.ts.iter().all(|x| x.abs() < one)
    }

    /// The same point with the four `t_r` replaced.
    pub fn with_ts(&self, ts: [Rational; 4]) -> Result<Self> {
        ParamPoint::new(self.qh.clone(), self.th.clone(), ts)
    }

    /// Exchanges the roles of `q` and `t`.
    pub fn swap_qt(&self) -> Self {
        ParamPoint::new(self.th.clone(), self.qh.clone(), self.ts.clone())
            .expect("swapping preserves nonvanishing")
    }

    /// Applies one of the fixed half-power shifts to the `t_r`.
    pub fn shift(&self, kind: ShiftKind) -> Self {
        use ShiftKind::*;
        let (qh, th) = (&self.qh, &self.th);
        let up_down = |up: &Rational| -> [Rational; 4] {
            [
                &self.ts[0] * up,
                &self.ts[1] * up,
                &self.ts[2] / up,
                &self.ts[3] / up,
            ]
        };
        let all = |f: &Rational| -> [Rational; 4] { self.ts.clone().map(|x| x * f) };
        let ts = match kind {
            DZeroSource => up_down(qh),
            DZeroSourceInverse => up_down(&qh.recip()),
            DPlusSource => all(qh),
            DMinusSource => all(&qh.recip()),
            IZeroTarget => up_down(th),
            IZeroTargetInverse => up_down(&th.recip()),
            IPlusTarget => all(&th.recip()),
            IMinusTarget => all(th),
        };
        ParamPoint { ts, ..self.clone() }
    }

    /// Floating values `(q, t, t0, t1, t2, t3)`.
    pub fn to_f64(&self) -> FloatParams {
        FloatParams {
            q: rational_to_f64(&self.q),
            t: rational_to_f64(&self.t),
            ts: self.ts.clone().map(|x| rational_to_f64(&x)),
        }
    }

    pub fn to_json(&self) -> ParamPointJson {
        ParamPointJson {
            qh: self.qh.to_string(),
            th: self.th.to_string(),
            t: self.ts.clone().map(|x| x.to_string()).to_vec(),
        }
    }

    pub fn from_json(j: &ParamPointJson) -> Result<Self> {
        if j.t.len() != 4 {
            return Err(Error::Parse(format!("expected 4 values in \"t\", got {}", j.t.len())));
        }
        let ts = [
            parse_rational(&j.t[0])?,
            parse_rational(&j.t[1])?,
            parse_rational(&j.t[2])?,
            parse_rational(&j.t[3])?,
        ];
        ParamPoint::new(parse_rational(&j.qh)?, parse_rational(&j.th)?, ts)
    }

    pub fn from_json_str(s: &str) -> Result<Self> {
        let j: ParamPointJson =
            serde_json::from_str(s).map_err(|e| Error::Parse(e.to_string()))?;
        Self::from_json(&j)
    }

    pub fn to_json_string(&self) -> String {
        serde_json::to_string(&self.to_json()).expect("plain strings serialize")
    }
}

/// Wire form: `{"qh":"1/2","th":"1/3","t":["1/5","1/7","-1/4","2/9"]}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ParamPointJson {
    pub qh: String,
    pub th: String,
    pub t: Vec<String>,
}

/// Parameters of the float backend.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FloatParams {
    pub q: f64,
    pub t: f64,
    pub ts: [f64; 4],
}

impl FloatParams {
    /// `t0 t1 t2 t3`.
    pub fn t0123(&self) -> f64 {
        self.ts.iter().product()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::rat;

    fn sample() -> ParamPoint {
        ParamPoint::new(rat(1, 2), rat(1, 3), [rat(1, 5), rat(1, 7), rat(-1, 4), rat(2, 9)]).unwrap()
    }

    #[test]
    fn squares_and_admissibility() {
        let p = sample();
        assert_eq!(p.q(), &rat(1, 4));
        assert_eq!(p.t(), &rat(1, 9));
        assert!(p.is_numeric_admissible());
        let big = ParamPoint::new(int(2), rat(1, 3), p.ts().clone()).unwrap();
        assert_eq!(big.q(), &int(4));
        assert!(!big.is_numeric_admissible());
    }

    #[test]
    fn zero_rejected() {
        let r = ParamPoint::new(rat(1, 2), rat(1, 3), [int(0), rat(1, 7), rat(-1, 4), rat(2, 9)]);
        assert!(matches!(r, Err(Error::InvalidParameter(_))));
        assert!(ParamPoint::new(int(0), rat(1, 3), sample().ts().clone()).is_err());
    }

    #[test]
    fn dzero_shift() {
        let p = sample();
        let s = p.shift(ShiftKind::DZeroSource);
        let qh = rat(1, 2);
        assert_eq!(s.ts()[0], rat(1, 5) * &qh);
        assert_eq!(s.ts()[1], rat(1, 7) * &qh);
        assert_eq!(s.ts()[2], rat(-1, 4) / &qh);
        assert_eq!(s.ts()[3], rat(2, 9) / &qh);
        assert_eq!(s.q(), p.q());
    }

    #[test]
    fn shifts_invert() {
        let p = sample();
        for k in ShiftKind::ALL {
            assert_eq!(p.shift(k).shift(k.inverse()), p, "{k:?}");
        }
    }

    #[test]
    fn dplus_on_equal_ts() {
        let c = rat(3, 11);
        let p = ParamPoint::new(rat(2, 3), rat(1, 3), [c.clone(), c.clone(), c.clone(), c.clone()]).unwrap();
        let s = p.shift(ShiftKind::DPlusSource);
        assert!(s.ts().iter().all(|x| *x == &c * rat(2, 3)));
    }

    #[test]
    fn json_round_trip() {
        let p = sample();
        let s = p.to_json_string();
        assert_eq!(s, r#"{"qh":"1/2","th":"1/3","t":["1/5","1/7","-1/4","2/9"]}"#);
        assert_eq!(ParamPoint::from_json_str(&s).unwrap(), p);
        assert!(ParamPoint::from_json_str(r#"{"qh":"1/2","th":"1/3","t":["1/5"]}"#).is_err());
    }
}
