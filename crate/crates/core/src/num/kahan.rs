/// Compensated accumulator. Keeps long prime/zeta sums reproducible to
/// ~1e-15 regardless of summation order.
#[derive(Clone, Copy, Debug, Default)]
pub struct Kahan {
    sum: f64,
    c: f64,
}

impl Kahan {
    pub fn new() -> Kahan {
        Kahan::default()
    }

    pub fn add(&mut self, x: f64) {
        let t = self.sum + x;
        // Neumaier variant: compensate from whichever operand dominated,
        // so cancellation of the running sum keeps the correction alive
        if self.sum.abs() >= x.abs() {
            self.c += (self.sum - t) + x;
        } else {
            self.c += (x - t) + self.sum;
        }
        self.sum = t;
    }

    pub fn value(&self) -> f64 {
        self.sum + self.c
    }
}

impl FromIterator<f64> for Kahan {
    fn from_iter<I: IntoIterator<Item = f64>>(iter: I) -> Kahan {
        let mut k = Kahan::new();
        for x in iter {
            k.add(x);
        }
        k
    }
}
