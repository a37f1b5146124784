use pycohinv::pycohinv_module;
use pyo3::ffi::c_str;
use pyo3::prelude::*;

fn with_module<F: FnOnce(Python<'_>)>(f: F) {
    pyo3::append_to_inittab!(pycohinv_module);
    Python::initialize();
    Python::attach(f);
}

#[test]
fn module_round_trips_through_python() {
    with_module(|py| {
        py.run(
            c_str!(
                r#"
import pycohinv as m
from fractions import Fraction
assert m.QuadraticForm([-1, -1, -1]).sw(2) == {"2": ["2", "inf"]}
assert m.Pfister([-1, -1, -1]).e_invariant() == {"3": 1}
c = m.CompositionAlgebra([3, -5])
x, y = [1, Fraction(1, 2), -2, 7], [0, 3, Fraction(-4, 9), 1]
assert c.norm(c.multiply(x, y)) == c.norm(x) * c.norm(y)
a = m.JordanAlgebra([-1, -1, -1], [1, 1, 5])
assert a.is_isomorphic(a) and a.dim() == 27
assert m.run_suite("distinguishing")["cases"] == 7
try:
    m.QuadraticForm([1, 0])
    raise AssertionError("zero entry accepted")
except ValueError as e:
    assert "form[1]" in str(e)
"#
            ),
            None,
            None,
        )
        .inspect_err(|e| {
            e.print(py);
        })
        .unwrap();
    });
}
