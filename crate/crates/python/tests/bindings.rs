use pyo3::ffi::c_str;
use homcalc_py::homcalc_py as bindings;
use pyo3::prelude::*;

fn run(code: &std::ffi::CStr) {
    pyo3::append_to_inittab!(bindings);
    Python::initialize();
    Python::attach(|py| {
        if let Err(e) = py.run(code, None, None) {
            e.print(py);
            panic!("python code failed");
        }
    });
}

#[test]
fn module_exposes_algebra_and_cochain_ops() {
    run(c_str!(
        r#"
import homcalc_py as hc
a = hc.Algebra.fixture("dual_numbers_twist_2")
assert a.validate()["passed"]
assert a.cohomology_dims(2) == hc.Algebra.from_json(a.to_json()).cohomology_dims(2)
f = a.random_cochain(1, seed=1)
g = a.random_cochain(1, seed=2)
assert a.bracket(f, g) == a.bracket(g, f) - a.bracket(g, f) - a.bracket(g, f)
assert a.coboundary(a.cup(f, g)).degree == 3
assert set(hc.suite_names()) == {r["suite"] for r in a.verify(trials=5)}
"#
    ));
}
