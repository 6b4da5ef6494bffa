use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use sha2::{Digest, Sha256};

/// Generator for replication `rep` of the cell labelled `cell` under the
/// master `seed`.
///
/// The ChaCha key is the first 32 bytes of `SHA-256(seed_le || cell)`, and the
/// replication index selects the ChaCha stream, so distinct replications of
/// one cell never share output.
pub fn substream(seed: u64, cell: &str, rep: u64) -> ChaCha8Rng {
    let mut hasher = Sha256::new();
    hasher.update(seed.to_le_bytes());
    hasher.update(cell.as_bytes());
    let key: [u8; 32] = hasher.finalize().into();
    let mut rng = ChaCha8Rng::from_seed(key);
    rng.set_stream(rep);
    rng
}
