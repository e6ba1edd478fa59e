// The acceptance harness compiles the core integration tests as plain
// functions; this cfg keeps their #[test] attributes off in that build.
fn main() {
    println!("cargo::rustc-check-cfg=cfg(lfpc_acceptance)");
    println!("cargo::rustc-cfg=lfpc_acceptance");
}
