use num_complex::Complex64;

/// Classical fourth-order Runge-Kutta for `y' = f(t, y)` on complex vectors.
pub(crate) struct Rk4 {
    k1: Vec<Complex64>,
    k2: Vec<Complex64>,
    k3: Vec<Complex64>,
    k4: Vec<Complex64>,
    tmp: Vec<Complex64>,
}

impl Rk4 {
    pub fn new(dim: usize) -> Self {
        let z = vec![Complex64::new(0.0, 0.0); dim];
        Self { k1: z.clone(), k2: z.clone(), k3: z.clone(), k4: z.clone(), tmp: z }
    }

    pub fn step<F>(&mut self, f: &F, t: f64, h: f64, y: &mut [Complex64])
    where
        F: Fn(f64, &[Complex64], &mut [Complex64]),
    {
        fn shifted(tmp: &mut [Complex64], y: &[Complex64], k: &[Complex64], h: f64) {
            for ((out, yi), ki) in tmp.iter_mut().zip(y).zip(k) {
                *out = yi + ki * h;
            }
        }
        f(t, y, &mut self.k1);
        shifted(&mut self.tmp, y, &self.k1, 0.5 * h);
        f(t + 0.5 * h, &self.tmp, &mut self.k2);
        shifted(&mut self.tmp, y, &self.k2, 0.5 * h);
        f(t + 0.5 * h, &self.tmp, &mut self.k3);
        shifted(&mut self.tmp, y, &self.k3, h);
        f(t + h, &self.tmp, &mut self.k4);
        for (i, yi) in y.iter_mut().enumerate() {
            *yi += (self.k1[i] + (self.k2[i] + self.k3[i]) * 2.0 + self.k4[i]) * (h / 6.0);
        }
    }

    /// Advances `y` from `t0` to `t1` with steps no longer than `max_step`,
    /// landing exactly on `t1`.
    pub fn advance<F>(&mut self, f: &F, t0: f64, t1: f64, max_step: f64, y: &mut [Complex64])
    where
        F: Fn(f64, &[Complex64], &mut [Complex64]),
    {
        let span = t1 - t0;
        if span <= 0.0 {
            return;
        }
        let n = (span / max_step).ceil().max(1.0) as usize;
        let h = span / n as f64;
        for k in 0..n {
            self.step(f, t0 + h * k as f64, h, y);
        }
    }
}
