fn main() {
    std::process::exit(dphls_hostcli::app::main_with(std::env::args_os()));
}
