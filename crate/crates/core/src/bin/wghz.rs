// Copyright 2026 Rydberg-WGHZ Contributors
// SPDX-License-Identifier: Apache-2.0

fn main() {
    std::process::exit(rydberg_wghz::cli::main_entry());
}
