//! Emergent objects: river components and their winding, NullRivers and
//! local time-reversal events.

mod events;
mod nullriver;
mod rivers;

pub use events::{detect_local_reversals, LocalReversalEvent, DEFAULT_THRESHOLD, DEFAULT_WINDOW};
pub use nullriver::{
    cyclic_period, detect_nullrivers, nullriver_signature_scan, NullRiverSighting, PhaseOutline,
    SignatureStats, NULLRIVER_BEFORE, NULLRIVER_FRAMES,
};
pub use rivers::{label_components, label_river_components, RiverComponent};
