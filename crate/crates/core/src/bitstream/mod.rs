//! Bit packing of frame parameters and the length-prefixed file container.

mod bits;
mod container;
mod frame;

pub use bits::{BitReader, BitWriter};
pub use container::{read_container, write_container, ContainerHeader, HEADER_LEN, MAGIC, VERSION};
pub use frame::{pack_frame, pack_wb_frame, unpack_frame, unpack_high_band, unpack_wb_frame};
