#![no_main]
use invosc::params::force_at;
use invosc::ForceProfile;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(force) = serde_json::from_slice::<ForceProfile>(data) else {
        return;
    };
    if force.validate().is_err() {
        return;
    }
    for t in [0.0, 0.25, 1.0, 3.5, 1e6] {
        if let Ok(f) = force_at(&force, t) {
            assert!(f.is_finite());
        }
    }
    let _ = force.breakpoints(0.0, 2.0);
});
