//! Ad-hoc throughput probe for the planned conv stacks. Run manually:
//! `cargo test -p svae-core --release --test perf_probe -- --ignored --nocapture`

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use svae_core::nn::{Conv2d, Dense, Gradients, Layer, Parameters, ResidualBlock, Sequential, Skip, Tensor};

fn residual(
    params: &mut Parameters<f32>,
    rng: &mut ChaCha8Rng,
    name: &str,
    cin: usize,
    cout: usize,
    stride: usize,
) -> Layer {
    let c1 = Conv2d::new(params, rng, &format!("{name}.conv1"), cin, cout, 3, stride, 1.0).unwrap();
    let c2 = Conv2d::new(params, rng, &format!("{name}.conv2"), cout, cout, 3, 1, 1.0).unwrap();
    let skip = if cin == cout && stride == 1 {
        Skip::Identity
    } else {
        Skip::Proj(Conv2d::new(params, rng, &format!("{name}.skip"), cin, cout, 1, stride, 1.0).unwrap())
    };
    Layer::Residual(ResidualBlock {
        name: name.into(),
        main: vec![Layer::Conv2d(c1), Layer::Relu, Layer::Conv2d(c2)],
        skip,
    })
}

#[test]
#[ignore]
fn conv_stack_throughput() {
    let mut rng = ChaCha8Rng::seed_from_u64(0);
    let mut params = Parameters::<f32>::new();
    let mut enc = Sequential::new("enc");
    enc.push(Layer::Conv2d(
        Conv2d::new(&mut params, &mut rng, "enc.stem", 1, 8, 3, 1, 1.0).unwrap(),
    ));
    enc.push(Layer::Relu);
    enc.push(residual(&mut params, &mut rng, "enc.b1", 8, 8, 2));
    enc.push(Layer::Relu);
    enc.push(residual(&mut params, &mut rng, "enc.b2", 8, 16, 2));
    enc.push(Layer::Relu);
    enc.push(residual(&mut params, &mut rng, "enc.b3", 16, 32, 2));
    enc.push(Layer::Relu);
    enc.push(residual(&mut params, &mut rng, "enc.b4", 32, 64, 2));
    enc.push(Layer::Relu);
    enc.push(Layer::Reshape(vec![64 * 4 * 4]));
    enc.push(Layer::Dense(
        Dense::new(&mut params, &mut rng, "enc.mu", 1024, 32, 1.0).unwrap(),
    ));

    let mut dec = Sequential::new("dec");
    dec.push(Layer::Dense(
        Dense::new(&mut params, &mut rng, "dec.fc", 32, 1024, 1.0).unwrap(),
    ));
    dec.push(Layer::Relu);
    dec.push(Layer::Reshape(vec![64, 4, 4]));
    dec.push(residual(&mut params, &mut rng, "dec.b1", 64, 32, 1));
    dec.push(Layer::Relu);
    dec.push(Layer::Upsample2x);
    dec.push(residual(&mut params, &mut rng, "dec.b2", 32, 16, 1));
    dec.push(Layer::Relu);
    dec.push(Layer::Upsample2x);
    dec.push(residual(&mut params, &mut rng, "dec.b3", 16, 8, 1));
    dec.push(Layer::Relu);
    dec.push(Layer::Upsample2x);
    dec.push(residual(&mut params, &mut rng, "dec.b4", 8, 8, 1));
    dec.push(Layer::Relu);
    dec.push(Layer::Upsample2x);
    dec.push(Layer::Conv2d(
        Conv2d::new(&mut params, &mut rng, "dec.out", 8, 1, 3, 1, 1.0).unwrap(),
    ));
    dec.push(Layer::Sigmoid);

    println!("params: {}", params.scalar_count());

    let img = Tensor::from_vec(
        &[1, 64, 64],
        (0..64 * 64).map(|_| rng.random_range(0.0f32..1.0)).collect(),
    )
    .unwrap();

    // encoder-only forward (the control-loop inference path)
    let iters = 50;
    let t0 = std::time::Instant::now();
    for _ in 0..iters {
        let _ = enc.forward(&params, &img).unwrap();
    }
    let enc_fwd = t0.elapsed().as_secs_f64() / iters as f64;
    println!("encoder forward: {:.3} ms", enc_fwd * 1e3);

    // encoder fwd+bwd alone
    let iters = 20;
    let t0 = std::time::Instant::now();
    for _ in 0..iters {
        let (mu, ec) = enc.forward_cached(&params, &img).unwrap();
        let mut grads = Gradients::zeros_like(&params);
        let mut g = mu.clone();
        g.fill(0.01);
        let _ = enc.backward(&params, &ec, &g, &mut grads).unwrap();
    }
    println!(
        "encoder fwd+bwd: {:.3} ms",
        t0.elapsed().as_secs_f64() / iters as f64 * 1e3
    );

    // full train step path: enc fwd + dec fwd + both backward
    let t0 = std::time::Instant::now();
    for _ in 0..iters {
        let (mu, ec) = enc.forward_cached(&params, &img).unwrap();
        let (out, dc) = dec.forward_cached(&params, &mu).unwrap();
        let mut grads = Gradients::zeros_like(&params);
        let mut g = out.clone();
        g.fill(1.0 / (64.0 * 64.0));
        let gz = dec.backward(&params, &dc, &g, &mut grads).unwrap();
        let _ = enc.backward(&params, &ec, &gz, &mut grads).unwrap();
    }
    let step = t0.elapsed().as_secs_f64() / iters as f64;
    println!("enc+dec fwd+bwd per sample: {:.3} ms", step * 1e3);
    println!(
        "approx epoch (2100 samples): {:.1} s; 30 epochs: {:.1} min",
        step * 2100.0,
        step * 2100.0 * 30.0 / 60.0
    );
}
