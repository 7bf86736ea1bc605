use pyo3::prelude::*;
use pyo3::types::PyDict;

fn with_module<F: FnOnce(&Bound<'_, PyModule>) -> PyResult<()>>(f: F) {
    Python::initialize();
    Python::attach(|py| {
        let m = pyo3::wrap_pymodule!(farey_bary_py::farey_bary_py)(py);
        f(m.bind(py).cast::<PyModule>().unwrap()).unwrap();
    });
}

#[test]
fn delta_tables_through_python() {
    with_module(|m| {
        let v: String = m.getattr("delta_n")?.call1(("3/5,1/5", 2))?.extract()?;
        assert_eq!(v, "5/9,1/9");
        let v: String = m.getattr("periodic_to_rational")?.call1(("1(II)",))?.extract()?;
        assert_eq!(v, "5/6,1/2");
        Ok(())
    });
}

#[test]
fn results_are_dicts() {
    with_module(|m| {
        let r = m.getattr("delta")?.call1(("1/2,1/6", "1/1000"))?;
        let d = r.cast::<PyDict>()?;
        let exact: bool = d.get_item("exact")?.unwrap().extract()?;
        assert!(exact);
        let seq = m.getattr("Sequence")?.call1(("raw:III,I,II,I",))?;
        assert_eq!(seq.str()?.to_string(), "2(III),2(II)");
        Ok(())
    });
}

#[test]
fn errors_become_exceptions() {
    with_module(|m| {
        let err = m.getattr("periodic_to_cubic")?.call1(("1(I)",)).unwrap_err();
        let not_dominant = m.getattr("NotDominantError")?;
        assert!(err.get_type(m.py()).is(&not_dominant));
        assert!(m.getattr("delta_n")?.call1(("2,1", 1)).is_err());
        Ok(())
    });
}
