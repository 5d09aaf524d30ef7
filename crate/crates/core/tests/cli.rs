use std::path::PathBuf;
use std::process::{Command, Output};

use num_bigint::BigUint;

fn bps(args: &[&str], env: &[(&str, &str)]) -> Output {
    let mut c = Command::new(env!("CARGO_BIN_EXE_bps"));
    c.args(args).env_remove("BPS_THREADS");
    for (k, v) in env {
        c.env(k, v);
    }
    c.output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn scratch(name: &str) -> PathBuf {
    let dir = PathBuf::from(env!("CARGO_TARGET_TMPDIR")).join("cli-tests");
    std::fs::create_dir_all(&dir).unwrap();
    dir.join(name)
}

#[test]
fn pi_of_100() {
    let o = bps(&["count", "--x", "100"], &[]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    let mut lines = out.lines();
    assert_eq!(
        lines.next(),
        Some("x,xi,alphas,betas,c,observed,predicted,predicted_li,rel_err,method,ms")
    );
    assert!(lines.next().unwrap().starts_with("100,0,,,,25,"));
}

#[test]
fn ps_count_row() {
    let o = bps(
        &["count", "--c", "13/12", "--x", "1e6", "--format", "json"],
        &[],
    );
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    let row = &v[0];
    assert_eq!(row["x"], 1_000_000);
    assert_eq!(row["c"], "13/12");
    assert_eq!(row["method"], "enumerate-ps");
    // independent count: primes of the form floor(n^(13/12)) below 10^6
    let mut sieve = vec![true; 1_000_001];
    sieve[0] = false;
    sieve[1] = false;
    for i in 2..=1000 {
        if sieve[i] {
            for j in (i * i..=1_000_000).step_by(i) {
                sieve[j] = false;
            }
        }
    }
    let mut count = 0u64;
    let mut last = 0u64;
    for n in 1u64.. {
        // float seed, corrected so that t^12 <= n^13 < (t+1)^12 exactly
        let mut t = (n as f64).powf(13.0 / 12.0).floor() as u64;
        let target = BigUint::from(n).pow(13);
        while BigUint::from(t).pow(12) > target {
            t -= 1;
        }
        while BigUint::from(t + 1).pow(12) <= target {
            t += 1;
        }
        if t > 1_000_000 {
            break;
        }
        if t != last && sieve[t as usize] {
            count += 1;
        }
        last = t;
    }
    assert_eq!(row["observed"], count);
}

#[test]
fn exit_codes() {
    let o = bps(&["count", "--alpha", "sqrt(2", "--x", "100"], &[]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("sqrt(2"));
    assert_eq!(bps(&["count", "--x", "ten"], &[]).status.code(), Some(2));
    assert_eq!(bps(&["frobnicate"], &[]).status.code(), Some(2));
    assert_eq!(
        bps(&["count", "--x", "1e13", "--method", "sieve-filter"], &[])
            .status
            .code(),
        Some(3)
    );
    assert_eq!(
        bps(&["dioph", "type", "--alpha", "sqrt(2)", "--N", "1e9"], &[])
            .status
            .code(),
        Some(3)
    );
    // a van der Corput constant of 0 cannot hold
    let o = bps(&["expsum", "--vdc", "--a", "1e3", "--constant", "0"], &[]);
    assert_eq!(o.status.code(), Some(4));
    assert_eq!(bps(&["--version"], &[]).status.code(), Some(0));
}

#[test]
fn verify_all_passes() {
    let o = bps(&["verify", "--samples", "1e4"], &[]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    let out = stdout(&o);
    for suite in ["psi", "heath-brown", "vaaler", "decomposition"] {
        assert!(out.lines().any(|l| l.starts_with(suite)), "{suite} missing");
    }
}

#[test]
fn expsum_and_dioph_tables() {
    let o = bps(&["expsum", "--phase", "h=1,gamma=12/13", "--x", "1e6"], &[]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert!(out.starts_with("lemma,params,direct_value,envelope,ratio\n"));
    assert_eq!(out.lines().count(), 3);
    let o = bps(
        &[
            "dioph", "type", "--alpha", "sqrt(2)", "--N", "1e6", "--t", "1.0,1.5",
        ],
        &[],
    );
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).lines().count(), 3);
    let o = bps(
        &["dioph", "best", "--alpha", "(1+sqrt(5))/2", "--qmax", "13"],
        &[],
    );
    assert!(stdout(&o).contains(",21,13,"));
}

const CONFIG: &str = "\
seed = 3
job = count --alpha sqrt(2) --beta 3/10 --c 13/12 --x 1e5,1e6
job = verify --suite psi --samples 1000
job = verify --suite heath-brown --z 30 --nmax 100 --random 50
job = expsum --type-sum II --x 1e5 --h 1,2
job = dioph indep --omega sqrt(2) --omega 3-2*sqrt(2) --B 5
";

#[test]
fn report_is_reproducible_across_threads() {
    let cfg = scratch("jobs.conf");
    std::fs::write(&cfg, CONFIG).unwrap();
    let (a, b) = (scratch("one.csv"), scratch("four.csv"));
    let o = bps(
        &["report", cfg.to_str().unwrap(), "-o", a.to_str().unwrap()],
        &[("BPS_THREADS", "1")],
    );
    assert_eq!(
        o.status.code(),
        Some(0),
        "{}",
        String::from_utf8_lossy(&o.stderr)
    );
    let o = bps(
        &[
            "report",
            cfg.to_str().unwrap(),
            "-o",
            b.to_str().unwrap(),
            "--threads",
            "4",
        ],
        &[],
    );
    assert_eq!(o.status.code(), Some(0));
    let (ta, tb) = (std::fs::read(&a).unwrap(), std::fs::read(&b).unwrap());
    assert_eq!(ta, tb);
    let text = String::from_utf8(ta).unwrap();
    assert_eq!(text.matches("# job ").count(), 5);
    assert!(text.contains("-3;2;1"));
}

#[test]
fn json_config_equals_key_value_config() {
    let kv = scratch("jobs2.conf");
    std::fs::write(&kv, CONFIG).unwrap();
    let from_kv = stdout(&bps(
        &["report", kv.to_str().unwrap(), "--format", "json"],
        &[],
    ));
    let parsed = bps::cli::ExperimentConfig::parse(CONFIG).unwrap();
    let js = scratch("jobs2.json");
    std::fs::write(&js, parsed.to_json()).unwrap();
    let from_json = stdout(&bps(
        &["report", js.to_str().unwrap(), "--format", "json"],
        &[],
    ));
    assert_eq!(from_kv, from_json);
    let v: serde_json::Value = serde_json::from_str(&from_json).unwrap();
    assert_eq!(v["seed"], 3);
    assert_eq!(v["jobs"].as_array().unwrap().len(), 5);
}

#[test]
fn bad_thread_env_is_a_usage_error() {
    assert_eq!(
        bps(&["count", "--x", "100"], &[("BPS_THREADS", "many")])
            .status
            .code(),
        Some(2)
    );
}
