#![no_main]

use libfuzzer_sys::fuzz_target;
use sphtwist::MeshConfig;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    let Ok(config) = MeshConfig::parse(text) else { return };
    // Keep the window small before materializing anything.
    if config.window.len() > 64 || config.window.is_empty() {
        return;
    }
    if let Ok(model) = config.build_model() {
        for (_, spec) in &config.sequences {
            // Validation must never panic, whatever the members are.
            let _ = model.check_spherical(spec);
        }
    }
});
