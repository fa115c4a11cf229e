//! Layers with explicit forward/backward passes.
//!
//! Parameters live in a [`Parameters`] table (ordered, name-keyed); layers
//! hold indices into it so the hot path never does string lookups. Gradients
//! are stored densely, parallel to the parameter table. A cached forward pass
//! keeps the full activation chain, which is exactly what the reverse pass
//! needs, so nothing is copied twice.

use rand::Rng;

use super::{NnError, NnResult, Scalar, Tensor};

/// Ordered, name-keyed parameter table (encoder parameters and
/// decoder/regressor parameters all live here).
#[derive(Debug, Clone)]
pub struct Parameters<F> {
    entries: Vec<(String, Tensor<F>)>,
}

impl<F: Scalar> Parameters<F> {
    pub fn new() -> Self {
        Parameters { entries: Vec::new() }
    }

    /// Insert a tensor under a unique name, returning its slot index.
    pub fn push(&mut self, name: &str, tensor: Tensor<F>) -> NnResult<usize> {
        if self.entries.iter().any(|(n, _)| n == name) {
            return Err(NnError::Config(format!("duplicate parameter name `{name}`")));
        }
        self.entries.push((name.to_string(), tensor));
        Ok(self.entries.len() - 1)
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn get(&self, idx: usize) -> &Tensor<F> {
        &self.entries[idx].1
    }

    pub fn get_mut(&mut self, idx: usize) -> &mut Tensor<F> {
        &mut self.entries[idx].1
    }

    pub fn name(&self, idx: usize) -> &str {
        &self.entries[idx].0
    }

    pub fn by_name(&self, name: &str) -> Option<&Tensor<F>> {
        self.entries.iter().find(|(n, _)| n == name).map(|(_, t)| t)
    }

    pub fn by_name_mut(&mut self, name: &str) -> Option<&mut Tensor<F>> {
        self.entries
            .iter_mut()
            .find(|(n, _)| n == name)
            .map(|(_, t)| t)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&str, &Tensor<F>)> {
        self.entries.iter().map(|(n, t)| (n.as_str(), t))
    }

    /// Total number of scalar parameters.
    pub fn scalar_count(&self) -> usize {
        self.entries.iter().map(|(_, t)| t.len()).sum()
    }

    pub fn cast<G: Scalar>(&self) -> Parameters<G> {
        Parameters {
            entries: self
                .entries
                .iter()
                .map(|(n, t)| (n.clone(), t.cast::<G>()))
                .collect(),
        }
    }
}

impl<F: Scalar> Default for Parameters<F> {
    fn default() -> Self {
        Self::new()
    }
}

/// Dense gradient storage, one slot per parameter tensor.
#[derive(Debug, Clone)]
pub struct Gradients<F> {
    slots: Vec<Tensor<F>>,
}

impl<F: Scalar> Gradients<F> {
    pub fn zeros_like(params: &Parameters<F>) -> Self {
        Gradients {
            slots: params
                .entries
                .iter()
                .map(|(_, t)| Tensor::zeros(t.dims()))
                .collect(),
        }
    }

    pub fn get(&self, idx: usize) -> &Tensor<F> {
        &self.slots[idx]
    }

    pub fn get_mut(&mut self, idx: usize) -> &mut Tensor<F> {
        &mut self.slots[idx]
    }

    pub fn slots(&self) -> &[Tensor<F>] {
        &self.slots
    }

    pub fn slots_mut(&mut self) -> &mut [Tensor<F>] {
        &mut self.slots
    }

    /// Accumulate `other` into `self` elementwise.
    pub fn add_assign(&mut self, other: &Gradients<F>) {
        for (dst, src) in self.slots.iter_mut().zip(&other.slots) {
            axpy(dst.data_mut(), src.data(), F::one());
        }
    }

    /// Scale all gradients by a constant.
    pub fn scale(&mut self, s: F) {
        for t in &mut self.slots {
            for v in t.data_mut() {
                *v *= s;
            }
        }
    }
}

/// Fan-in-scaled uniform init: U(-a, a) with a = gain * sqrt(3 / fan_in).
pub fn fan_in_uniform<F: Scalar, R: Rng>(
    rng: &mut R,
    dims: &[usize],
    fan_in: usize,
    gain: f64,
) -> Tensor<F> {
    let a = gain * (3.0 / fan_in.max(1) as f64).sqrt();
    let len: usize = dims.iter().product();
    let data = (0..len)
        .map(|_| F::from_f64(rng.random_range(-a..a)))
        .collect();
    Tensor::from_vec(dims, data).expect("init length")
}

// ---------------------------------------------------------------------------
// slice kernels
// ---------------------------------------------------------------------------

#[inline]
fn axpy<F: Scalar>(dst: &mut [F], src: &[F], a: F) {
    for (d, s) in dst.iter_mut().zip(src.iter()) {
        *d = s.mul_add(a, *d);
    }
}

#[inline]
fn dot<F: Scalar>(a: &[F], b: &[F]) -> F {
    // Four independent accumulators so the FMA chain pipelines.
    let mut acc = [F::zero(); 4];
    let chunks = a.len() / 4;
    for i in 0..chunks {
        let j = i * 4;
        acc[0] = a[j].mul_add(b[j], acc[0]);
        acc[1] = a[j + 1].mul_add(b[j + 1], acc[1]);
        acc[2] = a[j + 2].mul_add(b[j + 2], acc[2]);
        acc[3] = a[j + 3].mul_add(b[j + 3], acc[3]);
    }
    let mut tail = F::zero();
    for j in chunks * 4..a.len() {
        tail = a[j].mul_add(b[j], tail);
    }
    acc[0] + acc[1] + acc[2] + acc[3] + tail
}

// ---------------------------------------------------------------------------
// layers
// ---------------------------------------------------------------------------

/// Fully-connected layer on 1-D inputs. Weight dims `[out, in]`, bias `[out]`.
#[derive(Debug, Clone)]
pub struct Dense {
    pub name: String,
    pub in_dim: usize,
    pub out_dim: usize,
    pub w: usize,
    pub b: usize,
}

impl Dense {
    pub fn new<F: Scalar, R: Rng>(
        params: &mut Parameters<F>,
        rng: &mut R,
        name: &str,
        in_dim: usize,
        out_dim: usize,
        gain: f64,
    ) -> NnResult<Self> {
        let w = params.push(
            &format!("{name}.w"),
            fan_in_uniform(rng, &[out_dim, in_dim], in_dim, gain),
        )?;
        let b = params.push(&format!("{name}.b"), Tensor::zeros(&[out_dim]))?;
        Ok(Dense {
            name: name.to_string(),
            in_dim,
            out_dim,
            w,
            b,
        })
    }

    fn forward<F: Scalar>(&self, params: &Parameters<F>, x: &Tensor<F>) -> NnResult<Tensor<F>> {
        if x.len() != self.in_dim {
            return Err(NnError::Shape {
                layer: self.name.clone(),
                expected: format!("[{}]", self.in_dim),
                got: format!("{:?}", x.dims()),
            });
        }
        let w = params.get(self.w);
        let b = params.get(self.b);
        let mut out = Tensor::zeros(&[self.out_dim]);
        let xd = x.data();
        for (o, y) in out.data_mut().iter_mut().enumerate() {
            let row = &w.data()[o * self.in_dim..(o + 1) * self.in_dim];
            *y = b.data()[o] + dot(row, xd);
        }
        Ok(out)
    }

    fn backward<F: Scalar>(
        &self,
        params: &Parameters<F>,
        x: &Tensor<F>,
        gout: &Tensor<F>,
        grads: &mut Gradients<F>,
    ) -> Tensor<F> {
        let w = params.get(self.w);
        let mut gin = Tensor::zeros(&[self.in_dim]);
        {
            let gw = grads.get_mut(self.w);
            for (o, &g) in gout.data().iter().enumerate() {
                let row = &mut gw.data_mut()[o * self.in_dim..(o + 1) * self.in_dim];
                axpy(row, x.data(), g);
            }
        }
        {
            let gb = grads.get_mut(self.b);
            axpy(gb.data_mut(), gout.data(), F::one());
        }
        for (o, &g) in gout.data().iter().enumerate() {
            let row = &w.data()[o * self.in_dim..(o + 1) * self.in_dim];
            axpy(gin.data_mut(), row, g);
        }
        gin
    }
}

/// 2-D convolution on channels-last `[H, W, C]` inputs with square kernels
/// and symmetric zero padding `k/2`. Weight dims `[k, k, in_ch, out_ch]`,
/// bias `[out_ch]`. Channels-last keeps every inner loop contiguous over
/// `out_ch`, which is what the vectorizer wants on small feature maps.
#[derive(Debug, Clone)]
pub struct Conv2d {
    pub name: String,
    pub in_ch: usize,
    pub out_ch: usize,
    pub ksize: usize,
    pub stride: usize,
    pub w: usize,
    pub b: usize,
}

impl Conv2d {
    pub fn new<F: Scalar, R: Rng>(
        params: &mut Parameters<F>,
        rng: &mut R,
        name: &str,
        in_ch: usize,
        out_ch: usize,
        ksize: usize,
        stride: usize,
        gain: f64,
    ) -> NnResult<Self> {
        if !(ksize == 1 || ksize == 3) {
            return Err(NnError::Config(format!("unsupported kernel size {ksize}")));
        }
        if !(stride == 1 || stride == 2) {
            return Err(NnError::Config(format!("unsupported stride {stride}")));
        }
        let fan_in = in_ch * ksize * ksize;
        let w = params.push(
            &format!("{name}.w"),
            fan_in_uniform(rng, &[ksize, ksize, in_ch, out_ch], fan_in, gain),
        )?;
        let b = params.push(&format!("{name}.b"), Tensor::zeros(&[out_ch]))?;
        Ok(Conv2d {
            name: name.to_string(),
            in_ch,
            out_ch,
            ksize,
            stride,
            w,
            b,
        })
    }

    pub fn out_hw(&self, h: usize, w: usize) -> (usize, usize) {
        let pad = self.ksize / 2;
        (
            (h + 2 * pad - self.ksize) / self.stride + 1,
            (w + 2 * pad - self.ksize) / self.stride + 1,
        )
    }

    fn check_input<F: Scalar>(&self, x: &Tensor<F>) -> NnResult<(usize, usize)> {
        let d = x.dims();
        if d.len() != 3 || d[2] != self.in_ch {
            return Err(NnError::Shape {
                layer: self.name.clone(),
                expected: format!("[H, W, {}]", self.in_ch),
                got: format!("{d:?}"),
            });
        }
        Ok((d[0], d[1]))
    }

    fn forward<F: Scalar>(&self, params: &Parameters<F>, x: &Tensor<F>) -> NnResult<Tensor<F>> {
        let (h, w) = self.check_input(x)?;
        let (oh, ow) = self.out_hw(h, w);
        let weights = params.get(self.w).data();
        let bias = params.get(self.b).data();
        let mut out = Tensor::zeros(&[oh, ow, self.out_ch]);
        let k = self.ksize;
        let pad = (k / 2) as isize;
        let s = self.stride;
        let (ic_n, oc_n) = (self.in_ch, self.out_ch);
        let xd = x.data();
        let od = out.data_mut();

        for oy in 0..oh {
            for ox in 0..ow {
                let opx = &mut od[(oy * ow + ox) * oc_n..(oy * ow + ox + 1) * oc_n];
                opx.copy_from_slice(bias);
                for ky in 0..k {
                    let iy = (oy * s) as isize + ky as isize - pad;
                    if iy < 0 || iy >= h as isize {
                        continue;
                    }
                    for kx in 0..k {
                        let ix = (ox * s) as isize + kx as isize - pad;
                        if ix < 0 || ix >= w as isize {
                            continue;
                        }
                        let ipx = &xd[(iy as usize * w + ix as usize) * ic_n..][..ic_n];
                        let wk = &weights[(ky * k + kx) * ic_n * oc_n..][..ic_n * oc_n];
                        for (ic, &iv) in ipx.iter().enumerate() {
                            axpy(opx, &wk[ic * oc_n..(ic + 1) * oc_n], iv);
                        }
                    }
                }
            }
        }
        Ok(out)
    }

    fn backward<F: Scalar>(
        &self,
        params: &Parameters<F>,
        x: &Tensor<F>,
        gout: &Tensor<F>,
        grads: &mut Gradients<F>,
    ) -> Tensor<F> {
        let d = x.dims();
        let (h, w) = (d[0], d[1]);
        let (oh, ow) = self.out_hw(h, w);
        let k = self.ksize;
        let pad = (k / 2) as isize;
        let s = self.stride;
        let (ic_n, oc_n) = (self.in_ch, self.out_ch);
        let weights = params.get(self.w).data();
        let mut gin = Tensor::zeros(&[h, w, ic_n]);
        let xd = x.data();
        let gd = gout.data();

        // bias gradient: sum of gout over all output pixels
        {
            let gb = grads.get_mut(self.b).data_mut();
            for px in 0..oh * ow {
                axpy(gb, &gd[px * oc_n..(px + 1) * oc_n], F::one());
            }
        }

        let gind = gin.data_mut();
        let gw = grads.get_mut(self.w).data_mut();
        for oy in 0..oh {
            for ox in 0..ow {
                let gpx = &gd[(oy * ow + ox) * oc_n..(oy * ow + ox + 1) * oc_n];
                for ky in 0..k {
                    let iy = (oy * s) as isize + ky as isize - pad;
                    if iy < 0 || iy >= h as isize {
                        continue;
                    }
                    for kx in 0..k {
                        let ix = (ox * s) as isize + kx as isize - pad;
                        if ix < 0 || ix >= w as isize {
                            continue;
                        }
                        let ibase = (iy as usize * w + ix as usize) * ic_n;
                        let ipx = &xd[ibase..ibase + ic_n];
                        let gipx = &mut gind[ibase..ibase + ic_n];
                        let wk_base = (ky * k + kx) * ic_n * oc_n;
                        let gwk = &mut gw[wk_base..wk_base + ic_n * oc_n];
                        let wk = &weights[wk_base..wk_base + ic_n * oc_n];
                        for ic in 0..ic_n {
                            // dL/dw[ky,kx,ic,:] += x[iy,ix,ic] * gout[oy,ox,:]
                            axpy(&mut gwk[ic * oc_n..(ic + 1) * oc_n], gpx, ipx[ic]);
                            // dL/dx[iy,ix,ic] += dot(w[ky,kx,ic,:], gout[oy,ox,:])
                            gipx[ic] += dot(&wk[ic * oc_n..(ic + 1) * oc_n], gpx);
                        }
                    }
                }
            }
        }
        gin
    }
}

/// Skip path of a residual block.
#[derive(Debug, Clone)]
pub enum Skip {
    Identity,
    Proj(Conv2d),
}

/// Residual block: `out = main(x) + skip(x)`. The trailing nonlinearity is a
/// separate layer so a zero-initialized main branch leaves the input intact.
#[derive(Debug, Clone)]
pub struct ResidualBlock {
    pub name: String,
    pub main: Vec<Layer>,
    pub skip: Skip,
}

/// A single computation step. Networks are sequences of these.
#[derive(Debug, Clone)]
pub enum Layer {
    Dense(Dense),
    Conv2d(Conv2d),
    Relu,
    Sigmoid,
    Residual(ResidualBlock),
    /// Nearest-neighbor 2x spatial upsample of a `[C, H, W]` tensor.
    Upsample2x,
    /// Checked reshape.
    Reshape(Vec<usize>),
}

/// Nested activations for a residual layer: outputs of each main-branch layer.
#[derive(Debug, Clone)]
pub struct ResCache<F> {
    main_acts: Vec<Tensor<F>>,
    main_nested: Vec<Option<ResCache<F>>>,
}

/// Cache for a full sequential forward pass: the activation chain
/// (`acts[0]` is the input, `acts[i+1]` the output of layer `i`) plus nested
/// caches for residual layers.
#[derive(Debug, Clone)]
pub struct SeqCache<F> {
    acts: Vec<Tensor<F>>,
    nested: Vec<Option<ResCache<F>>>,
}

impl<F> SeqCache<F> {
    pub fn output_dims(&self) -> &[usize] {
        self.acts.last().map(|t| t.dims()).unwrap_or(&[])
    }

    pub fn output(&self) -> &Tensor<F> {
        self.acts.last().expect("non-empty cache")
    }
}

/// A named sequence of layers sharing one parameter table.
#[derive(Debug, Clone)]
pub struct Sequential {
    pub name: String,
    pub layers: Vec<Layer>,
}

impl Sequential {
    pub fn new(name: &str) -> Self {
        Sequential {
            name: name.to_string(),
            layers: Vec::new(),
        }
    }

    pub fn push(&mut self, layer: Layer) {
        self.layers.push(layer);
    }

    pub fn forward<F: Scalar>(
        &self,
        params: &Parameters<F>,
        input: &Tensor<F>,
    ) -> NnResult<Tensor<F>> {
        let mut x = input.clone();
        for layer in &self.layers {
            x = layer_forward(layer, params, &x)?.0;
        }
        Ok(x)
    }

    /// Forward pass that retains the activation chain for backward.
    pub fn forward_cached<F: Scalar>(
        &self,
        params: &Parameters<F>,
        input: &Tensor<F>,
    ) -> NnResult<(Tensor<F>, SeqCache<F>)> {
        let mut acts = Vec::with_capacity(self.layers.len() + 1);
        let mut nested = Vec::with_capacity(self.layers.len());
        acts.push(input.clone());
        for layer in &self.layers {
            let (out, rc) = layer_forward(layer, params, acts.last().unwrap())?;
            acts.push(out);
            nested.push(rc);
        }
        let out = acts.last().unwrap().clone();
        Ok((out, SeqCache { acts, nested }))
    }

    /// Reverse pass. Returns the gradient with respect to the input and
    /// accumulates parameter gradients into `grads`.
    pub fn backward<F: Scalar>(
        &self,
        params: &Parameters<F>,
        cache: &SeqCache<F>,
        gout: &Tensor<F>,
        grads: &mut Gradients<F>,
    ) -> NnResult<Tensor<F>> {
        if cache.acts.len() != self.layers.len() + 1 {
            return Err(NnError::StaleCache(format!(
                "cache has {} activations for {} layers in `{}`",
                cache.acts.len(),
                self.layers.len(),
                self.name
            )));
        }
        if gout.dims() != cache.acts.last().unwrap().dims() {
            return Err(NnError::StaleCache(format!(
                "output gradient dims {:?} do not match cached output dims {:?} in `{}`",
                gout.dims(),
                cache.acts.last().unwrap().dims(),
                self.name
            )));
        }
        let mut g = gout.clone();
        for (i, layer) in self.layers.iter().enumerate().rev() {
            g = layer_backward(
                layer,
                params,
                &cache.acts[i],
                &cache.acts[i + 1],
                cache.nested[i].as_ref(),
                &g,
                grads,
            )?;
        }
        Ok(g)
    }
}

fn layer_forward<F: Scalar>(
    layer: &Layer,
    params: &Parameters<F>,
    x: &Tensor<F>,
) -> NnResult<(Tensor<F>, Option<ResCache<F>>)> {
    match layer {
        Layer::Dense(d) => Ok((d.forward(params, x)?, None)),
        Layer::Conv2d(cv) => Ok((cv.forward(params, x)?, None)),
        Layer::Relu => {
            let mut out = x.clone();
            for v in out.data_mut() {
                if *v < F::zero() {
                    *v = F::zero();
                }
            }
            Ok((out, None))
        }
        Layer::Sigmoid => {
            let mut out = x.clone();
            for v in out.data_mut() {
                *v = sigmoid(*v);
            }
            Ok((out, None))
        }
        Layer::Residual(rb) => {
            let mut main_acts = Vec::with_capacity(rb.main.len());
            let mut main_nested = Vec::with_capacity(rb.main.len());
            for (i, l) in rb.main.iter().enumerate() {
                let input = if i == 0 { x } else { &main_acts[i - 1] };
                let (out, rc) = layer_forward(l, params, input)?;
                main_acts.push(out);
                main_nested.push(rc);
            }
            let s = match &rb.skip {
                Skip::Identity => x.clone(),
                Skip::Proj(conv) => conv.forward(params, x)?,
            };
            let m = main_acts.last().cloned().unwrap_or_else(|| x.clone());
            if m.dims() != s.dims() {
                return Err(NnError::Shape {
                    layer: rb.name.clone(),
                    expected: format!("skip dims {:?}", s.dims()),
                    got: format!("main dims {:?}", m.dims()),
                });
            }
            let mut out = m;
            axpy(out.data_mut(), s.data(), F::one());
            Ok((
                out,
                Some(ResCache {
                    main_acts,
                    main_nested,
                }),
            ))
        }
        Layer::Upsample2x => {
            let d = x.dims();
            if d.len() != 3 {
                return Err(NnError::Shape {
                    layer: "upsample2x".into(),
                    expected: "[H, W, C]".into(),
                    got: format!("{d:?}"),
                });
            }
            let (h, w, c) = (d[0], d[1], d[2]);
            let mut out = Tensor::zeros(&[2 * h, 2 * w, c]);
            let od = out.data_mut();
            let row_len = 2 * w * c;
            for y in 0..h {
                for xcol in 0..w {
                    let src = &x.data()[(y * w + xcol) * c..(y * w + xcol + 1) * c];
                    let r0 = 2 * y * row_len + 2 * xcol * c;
                    od[r0..r0 + c].copy_from_slice(src);
                    od[r0 + c..r0 + 2 * c].copy_from_slice(src);
                }
                let (head, tail) = od.split_at_mut((2 * y + 1) * row_len);
                tail[..row_len].copy_from_slice(&head[2 * y * row_len..]);
            }
            Ok((out, None))
        }
        Layer::Reshape(dims) => Ok((x.clone().reshaped(dims)?, None)),
    }
}

#[allow(clippy::too_many_arguments)]
fn layer_backward<F: Scalar>(
    layer: &Layer,
    params: &Parameters<F>,
    input: &Tensor<F>,
    output: &Tensor<F>,
    nested: Option<&ResCache<F>>,
    gout: &Tensor<F>,
    grads: &mut Gradients<F>,
) -> NnResult<Tensor<F>> {
    match layer {
        Layer::Dense(d) => Ok(d.backward(params, input, gout, grads)),
        Layer::Conv2d(cv) => Ok(cv.backward(params, input, gout, grads)),
        Layer::Relu => {
            let mut gin = gout.clone();
            for (g, &v) in gin.data_mut().iter_mut().zip(input.data()) {
                if v <= F::zero() {
                    *g = F::zero();
                }
            }
            Ok(gin)
        }
        Layer::Sigmoid => {
            let mut gin = gout.clone();
            for (g, &yv) in gin.data_mut().iter_mut().zip(output.data()) {
                *g = *g * yv * (F::one() - yv);
            }
            Ok(gin)
        }
        Layer::Residual(rb) => {
            let rc = nested.ok_or_else(|| {
                NnError::StaleCache(format!("missing residual cache for `{}`", rb.name))
            })?;
            if rc.main_acts.len() != rb.main.len() {
                return Err(NnError::StaleCache(format!(
                    "residual cache has {} activations for {} layers in `{}`",
                    rc.main_acts.len(),
                    rb.main.len(),
                    rb.name
                )));
            }
            let mut g = gout.clone();
            for (i, l) in rb.main.iter().enumerate().rev() {
                let lin = if i == 0 { input } else { &rc.main_acts[i - 1] };
                g = layer_backward(
                    l,
                    params,
                    lin,
                    &rc.main_acts[i],
                    rc.main_nested[i].as_ref(),
                    &g,
                    grads,
                )?;
            }
            let gskip = match &rb.skip {
                Skip::Identity => gout.clone(),
                Skip::Proj(conv) => conv.backward(params, input, gout, grads),
            };
            if g.dims() != gskip.dims() {
                return Err(NnError::StaleCache(format!(
                    "residual branch gradient dims {:?} vs {:?} in `{}`",
                    g.dims(),
                    gskip.dims(),
                    rb.name
                )));
            }
            axpy(g.data_mut(), gskip.data(), F::one());
            Ok(g)
        }
        Layer::Upsample2x => {
            let d = gout.dims();
            let (c, h2, w2) = (d[0], d[1], d[2]);
            let (h, w) = (h2 / 2, w2 / 2);
            let mut gin = Tensor::zeros(&[c, h, w]);
            for ch in 0..c {
                for y in 0..h {
                    let base = ch * h2 * w2;
                    let row0 = &gout.data()[base + 2 * y * w2..base + (2 * y) * w2 + w2];
                    let row1 = &gout.data()[base + (2 * y + 1) * w2..base + (2 * y + 1) * w2 + w2];
                    let dst = &mut gin.data_mut()[(ch * h + y) * w..(ch * h + y + 1) * w];
                    for (i, d) in dst.iter_mut().enumerate() {
                        *d = row0[2 * i] + row0[2 * i + 1] + row1[2 * i] + row1[2 * i + 1];
                    }
                }
            }
            Ok(gin)
        }
        Layer::Reshape(_) => Ok(gout.clone().reshaped(input.dims())?),
    }
}

#[inline]
fn sigmoid<F: Scalar>(x: F) -> F {
    if x >= F::zero() {
        F::one() / (F::one() + (-x).exp())
    } else {
        let e = x.exp();
        e / (F::one() + e)
    }
}
