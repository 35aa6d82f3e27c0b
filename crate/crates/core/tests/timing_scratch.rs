use jcpure::dynamics;
use jcpure::observables::{wigner, GridSpec};
use jcpure::runner;
use jcpure::ScenarioConfig;

#[test]
#[ignore]
fn wigner_full_timing() {
    let cfg = ScenarioConfig::default().effective().unwrap();
    let b = runner::branches_at(&cfg, 12.54).unwrap();
    let rho = dynamics::field_density(&b);
    let spec = GridSpec::default_alpha4();
    let t0 = std::time::Instant::now();
    let grid = wigner(&rho, &spec).unwrap();
    println!("total wigner: {:?}, integral {:.6}", t0.elapsed(), grid.integral());
}
