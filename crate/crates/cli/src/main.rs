use clap::Parser;

fn main() {
    // Engine parallelism is internal; BILLIARDS_THREADS caps the pool.
    if let Ok(threads) = std::env::var("BILLIARDS_THREADS") {
        if let Ok(n) = threads.parse::<usize>() {
            let _ = rayon::ThreadPoolBuilder::new()
                .num_threads(n)
                .build_global();
        }
    }
    // Clap reserves exit code 2 for usage errors, but 2 means numerical
    // non-convergence here; route argument problems to exit 1.
    let cli = match billiards_cli::Cli::try_parse() {
        Ok(cli) => cli,
        Err(e)
            if e.kind() == clap::error::ErrorKind::DisplayHelp
                || e.kind() == clap::error::ErrorKind::DisplayVersion =>
        {
            print!("{e}");
            return;
        }
        Err(e) => {
            eprint!("{e}");
            std::process::exit(1);
        }
    };
    match billiards_cli::execute(cli) {
        Ok(stdout) => {
            print!("{stdout}");
        }
        Err(err) => {
            eprintln!("billiards: {err}");
            std::process::exit(err.exit_code());
        }
    }
}
