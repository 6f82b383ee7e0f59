fn main() {
    let code = pel::run(
        std::env::args_os(),
        &|key| std::env::var(key).ok(),
        &mut std::io::stdout().lock(),
        &mut std::io::stderr().lock(),
    );
    std::process::exit(code);
}
