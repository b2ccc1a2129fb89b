#![no_main]
use invosc_cli::RunConfig;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    if let Ok(config) = RunConfig::load(Some(text), &[]) {
        // an accepted config must survive its own printed form
        let again = RunConfig::load(Some(&config.to_pretty_json()), &[]).expect("printed config reloads");
        assert_eq!(again.sha256(), config.sha256());
    }
});
