fn main() {
    #[cfg(feature = "generate-header")]
    {
        let crate_dir = std::env::var("CARGO_MANIFEST_DIR").expect("CARGO_MANIFEST_DIR not set");
        let config = cbindgen::Config::from_file("cbindgen.toml")
            .expect("failed to read cbindgen.toml");
        cbindgen::generate_with_config(&crate_dir, config)
            .expect("failed to generate C bindings")
            .write_to_file("include/rectilens.h");
    }
    println!("cargo:rerun-if-changed=src/lib.rs");
    println!("cargo:rerun-if-changed=cbindgen.toml");
}
