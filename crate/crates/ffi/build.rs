use std::env;
use std::path::PathBuf;

fn main() {
    let crate_dir = PathBuf::from(env::var("CARGO_MANIFEST_DIR").expect("manifest dir"));
    println!("cargo:rerun-if-changed=src/lib.rs");
    println!("cargo:rerun-if-changed=cbindgen.toml");

    let config =
        cbindgen::Config::from_file(crate_dir.join("cbindgen.toml")).expect("cbindgen.toml parses");
    match cbindgen::Builder::new()
        .with_crate(&crate_dir)
        .with_config(config)
        .generate()
    {
        Ok(bindings) => {
            bindings.write_to_file(crate_dir.join("include").join("distk.h"));
        }
        Err(cbindgen::Error::ParseSyntaxError { .. }) => {
            // A syntactically broken source fails rustc anyway with a better
            // message; keep the stale header rather than duplicating errors.
        }
        Err(e) => panic!("header generation failed: {e}"),
    }
}
