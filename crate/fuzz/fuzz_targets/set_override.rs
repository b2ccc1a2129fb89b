#![no_main]
use invosc_cli::config::apply_override;
use invosc_cli::RunConfig;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    let overrides: Vec<String> = text.lines().map(str::to_string).collect();
    let mut value = serde_json::to_value(RunConfig::default()).unwrap();
    for entry in &overrides {
        let _ = apply_override(&mut value, entry);
    }
    let _ = RunConfig::load(None, &overrides);
});
