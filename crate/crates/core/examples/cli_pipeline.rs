//! The command layer in-process: generate -> validate -> decompose ->
//! stability, exactly as the binary would run them.
//!
//!     cargo run --example cli_pipeline

use bunch_surface::commands::run;

fn main() {
    let dir = std::env::temp_dir().join("bunch-surface-pipeline");
    std::fs::create_dir_all(&dir).unwrap();
    let spec = dir.join("g3.json");

    let out = run(["bunch-surface", "generate", "--genus", "3"]);
    std::fs::write(&spec, &out.stdout).unwrap();
    let path = spec.to_str().unwrap();
    for cmd in ["validate", "decompose", "stability"] {
        let out = run(["bunch-surface", cmd, path]);
        println!("$ bunch-surface {cmd} g3.json   # exit {}", out.code());
        print!("{}", String::from_utf8_lossy(&out.stdout));
    }
    let bad = run(["bunch-surface", "generate", "--genus", "1"]);
    print!(
        "$ bunch-surface generate --genus 1   # exit {}\n{}",
        bad.code(),
        bad.stderr
    );
}
