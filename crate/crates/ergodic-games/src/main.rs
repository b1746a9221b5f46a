fn main() {
    std::process::exit(ergodic_games::cli::dispatch_env());
}
