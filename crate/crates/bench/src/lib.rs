//! Shared workloads for the benchmarks in `benches/`.

use fpzeta::{catalog, count_zeta, CountOptions, Flavor, LieRing, Method, Params, Prime, ZetaPoly};

pub struct Workload {
    pub label: &'static str,
    pub ring: LieRing,
    pub p: Prime,
    pub flavor: Flavor,
    pub opts: CountOptions,
}

impl Workload {
    pub fn run(&self) -> ZetaPoly {
        count_zeta(&self.ring, self.p, self.flavor, &self.opts).expect("workload counts").poly
    }
}

fn make(label: &'static str, name: &str, params: &[(&str, i64)], p: u64, flavor: Flavor, method: Method, prune: bool) -> Workload {
    let params: Params = params.iter().map(|&(k, v)| (k.to_string(), v)).collect();
    Workload {
        label,
        ring: catalog(name, &params).expect("catalog ring"),
        p: Prime::new(p).expect("prime"),
        flavor,
        opts: CountOptions { method, budget: None, prune },
    }
}

/// Pruned and naive brute force, and the class-2 path.
pub fn workloads() -> Vec<Workload> {
    use Flavor::*;
    use Method::*;
    vec![
        make("heisenberg_sub_p7", "heisenberg", &[], 7, Sub, Brute, true),
        make("heisenberg_sub_p7_naive", "heisenberg", &[], 7, Sub, Brute, false),
        make("m4_sub_p3", "M", &[("c", 4)], 3, Sub, Brute, true),
        make("m4_sub_p3_naive", "M", &[("c", 4)], 3, Sub, Brute, false),
        make("f32_ideal_p5", "f", &[("c", 3), ("d", 2)], 5, Ideal, Brute, true),
        make("f42_ideal_p3", "f", &[("c", 4), ("d", 2)], 3, Ideal, Brute, true),
        make("vl_ideal_p7", "vl", &[("a", 1), ("b", 1)], 7, Ideal, Brute, true),
        make("tr4_ideal_p2", "tr", &[("n", 4)], 2, Ideal, Brute, true),
        make("le_ideal_p5_class2", "L_E", &[], 5, Ideal, Class2, true),
        make("le_ideal_p5_brute", "L_E", &[], 5, Ideal, Brute, true),
        make("le_ideal_p13_class2", "L_E", &[], 13, Ideal, Class2, true),
        make("f24_ideal_p3_class2", "f", &[("c", 2), ("d", 4)], 3, Ideal, Class2, true),
    ]
}
