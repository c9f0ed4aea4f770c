use swsurg_core::catalog;

fn main() {
    for (name, file) in [
        ("k3.mfd", catalog::k3_file()),
        ("x0.mfd", catalog::x0_file()),
        ("nonprimitive.mfd", catalog::nonprimitive_file()),
    ] {
        std::fs::write(format!("catalog/{name}"), file.serialize(true)).unwrap();
    }
}
