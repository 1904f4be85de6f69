use std::fs;
use std::path::Path;
use std::process::{Command, Output};

fn synqber(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_synqber"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn ok(out: &Output) -> String {
    assert!(
        out.status.success(),
        "exit {:?}\nstderr: {}",
        out.status.code(),
        String::from_utf8_lossy(&out.stderr)
    );
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn gen_pool(dir: &Path, n: usize) -> std::path::PathBuf {
    let dist = dir.join("dist.txt");
    fs::write(&dist, "# degree fraction\n2 0.5\n3 0.3\n8 0.2\n").unwrap();
    let pool = dir.join(format!("pool{n}"));
    ok(&synqber(&[
        "gen-codes",
        "--n",
        &n.to_string(),
        "--dist",
        dist.to_str().unwrap(),
        "--seed",
        "5",
        "--out",
        pool.to_str().unwrap(),
    ]));
    pool
}

fn write_config(dir: &Path, n: usize, extra: &str) -> std::path::PathBuf {
    let cfg = dir.join("sim.cfg");
    fs::write(
        &cfg,
        format!("pool_dir = pool{n}\nn = {n}\nblocks = 60\nseed = 11\ntrace.sigma_step = 0.002\n{extra}"),
    )
    .unwrap();
    cfg
}

#[test]
fn gen_codes_writes_manifest_and_alists() {
    let dir = tempfile::tempdir().unwrap();
    let pool = gen_pool(dir.path(), 400);
    let manifest = fs::read_to_string(pool.join("manifest.csv")).unwrap();
    let lines: Vec<&str> = manifest.lines().collect();
    assert_eq!(lines[0], "rate,m,file,girth");
    assert_eq!(lines.len(), 10);
    assert!(lines[1].starts_with("0.5,200,"));
    assert!(lines[9].starts_with("0.9,40,"));
}

#[test]
fn simulate_is_deterministic_and_report_recomputes() {
    let dir = tempfile::tempdir().unwrap();
    gen_pool(dir.path(), 1000);
    let cfg = write_config(dir.path(), 1000, "");
    let out_a = dir.path().join("a");
    let out_b = dir.path().join("b");
    let out_p = dir.path().join("p");
    ok(&synqber(&[
        "simulate",
        "--config",
        cfg.to_str().unwrap(),
        "--out",
        out_a.to_str().unwrap(),
    ]));
    ok(&synqber(&[
        "simulate",
        "--config",
        cfg.to_str().unwrap(),
        "--out",
        out_b.to_str().unwrap(),
    ]));
    ok(&synqber(&[
        "simulate",
        "--config",
        cfg.to_str().unwrap(),
        "--out",
        out_p.to_str().unwrap(),
        "--parallel",
    ]));
    for file in [
        "blocks.csv",
        "report.csv",
        "hist_prev.csv",
        "hist_synd.csv",
        "hist_mix.csv",
    ] {
        let a = fs::read(out_a.join(file)).unwrap();
        assert_eq!(a, fs::read(out_b.join(file)).unwrap(), "{file}");
        assert_eq!(a, fs::read(out_p.join(file)).unwrap(), "{file} (parallel)");
    }
    let blocks = fs::read_to_string(out_a.join("blocks.csv")).unwrap();
    assert!(blocks
        .starts_with("block_index,n,n_s,n_p,rate,q_true,q_prev,q_synd,q_mix,m_eff,converged\n"));
    assert_eq!(blocks.lines().count(), 61);

    let recomputed = ok(&synqber(&[
        "report",
        "--blocks",
        out_a.join("blocks.csv").to_str().unwrap(),
    ]));
    assert_eq!(
        recomputed,
        fs::read_to_string(out_a.join("report.csv")).unwrap()
    );
}

#[test]
fn estimate_zero_relative_syndrome() {
    use synqber::estimator::{effective_degrees, estimate_qber_syndrome, Prior, QberWindowPrior};
    use synqber::extension::plan_extension;
    use synqber::ldpc::load_alist;

    let dir = tempfile::tempdir().unwrap();
    let pool = gen_pool(dir.path(), 400);
    let matrix = pool.join("code_n400_r0.9000.alist");
    let h = load_alist(&matrix).unwrap();
    let syndrome = "0".repeat(h.m());
    let sa = dir.path().join("sa.txt");
    let sb = dir.path().join("sb.txt");
    fs::write(&sa, &syndrome).unwrap();
    fs::write(&sb, &syndrome).unwrap();
    let out = ok(&synqber(&[
        "estimate",
        "--matrix",
        matrix.to_str().unwrap(),
        "--syndrome-a",
        sa.to_str().unwrap(),
        "--syndrome-b",
        sb.to_str().unwrap(),
        "--layout",
        "4,0,9",
        "--prior",
        "500,500,0.01,0.08",
    ]));
    let printed: f64 = out.trim().parse().unwrap();

    let layout = plan_extension(400, 4, 0, 9).unwrap();
    let profile = effective_degrees(&h, &layout).unwrap();
    let expected = estimate_qber_syndrome(
        &synqber::BitBlock::zeros(h.m()),
        &profile,
        &Prior::Window(QberWindowPrior::DEPLOYED),
    )
    .unwrap();
    assert_eq!(printed, expected.q_est);
    // Likelihood pulls toward zero, the window pulls above q_min: the
    // maximum sits at or below the window's lower edge.
    assert!(printed <= 0.011, "{printed}");
}

#[test]
fn exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let pool = gen_pool(dir.path(), 400);
    let matrix = pool.join("code_n400_r0.5000.alist");
    let syndrome = dir.path().join("s.txt");
    fs::write(&syndrome, "0".repeat(200)).unwrap();
    let m = matrix.to_str().unwrap();
    let s = syndrome.to_str().unwrap();

    // Every row touches a punctured bit: nothing to estimate from.
    let out = synqber(&[
        "estimate",
        "--matrix",
        m,
        "--syndrome-a",
        s,
        "--syndrome-b",
        s,
        "--layout",
        "0,399,1",
    ]);
    assert_eq!(out.status.code(), Some(2));

    let out = synqber(&["estimate", "--matrix", m, "--syndrome-a", s]);
    assert_eq!(out.status.code(), Some(1));
    let out = synqber(&[
        "estimate",
        "--matrix",
        m,
        "--syndrome-a",
        s,
        "--syndrome-b",
        s,
        "--layout",
        "1,2",
    ]);
    assert_eq!(out.status.code(), Some(1));

    let out = synqber(&[
        "report",
        "--blocks",
        dir.path().join("missing.csv").to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(3));

    assert_eq!(synqber(&["--help"]).status.code(), Some(0));
}
