fn main() {
    std::process::exit(lattice_trajectories::cli::main_with_env());
}
