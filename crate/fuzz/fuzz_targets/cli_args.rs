#![no_main]
use clap::Parser;
use invosc_cli::Cli;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    let args = std::iter::once("invosc").chain(text.split('\0'));
    if let Ok(cli) = Cli::try_parse_from(args) {
        // only the config stage: no numerical work, no file output
        if cli.config.is_none() {
            let _ = invosc_cli::load_config(&cli);
        }
    }
});
