#![allow(dead_code)]

use mavshield::cipher::aes::Aes128;
use mavshield::cipher::mavshield::MavShield;
use mavshield::cipher::rabbit::rabbit_xcrypt;
use mavshield::cipher::speck::{Speck128, SpeckVariant};
use mavshield::cipher::{build_cipher, CipherKey, CipherSuite, CounterBlock128, Nonce64};

pub const KAT: &str = include_str!("../data/kat.txt");

#[derive(Debug)]
pub struct KatRow {
    pub suite: String,
    pub key: String,
    pub nonce_or_iv: String,
    pub pt: Vec<u8>,
    pub ct: Vec<u8>,
}

pub fn kat_rows() -> Vec<KatRow> {
    KAT.lines()
        .map(str::trim)
        .filter(|l| !l.is_empty() && !l.starts_with('#'))
        .map(|l| {
            let f: Vec<&str> = l.split_whitespace().collect();
            assert_eq!(f.len(), 5, "bad fixture line: {l}");
            KatRow {
                suite: f[0].to_string(),
                key: f[1].to_string(),
                nonce_or_iv: f[2].to_string(),
                pt: hex::decode(f[3]).unwrap(),
                ct: hex::decode(f[4]).unwrap(),
            }
        })
        .collect()
}

fn block(v: &[u8]) -> [u8; 16] {
    v.try_into().expect("16-byte block")
}

/// Runs one fixture row through the library and returns the computed output.
pub fn compute(row: &KatRow) -> Vec<u8> {
    let key = CipherKey::from_hex(&row.key).unwrap();
    match row.suite.as_str() {
        "speck128_128" | "speck128_192" | "speck128_256" => {
            let variant = match row.suite.as_str() {
                "speck128_128" => SpeckVariant::SPECK128_128,
                "speck128_192" => SpeckVariant::SPECK128_192,
                _ => SpeckVariant::SPECK128_256,
            };
            Speck128::new(variant, &key).unwrap().encrypt(&block(&row.pt)).to_vec()
        }
        "aes128" => Aes128::from_key(&key).unwrap().encrypt(&block(&row.pt)).to_vec(),
        "aes128_ctr" => {
            let iv = CounterBlock128::from_hex(&row.nonce_or_iv).unwrap();
            mavshield::cipher::aes::aes128_ctr_xcrypt(&key, &iv, &row.pt).unwrap()
        }
        "chacha20" => {
            let iv = CounterBlock128::from_hex(&row.nonce_or_iv).unwrap();
            let cipher = build_cipher(CipherSuite::ChaCha20, &key, Nonce64(0)).unwrap();
            let mut data = row.pt.clone();
            cipher.xcrypt(&iv, &mut data);
            data
        }
        "rabbit" => rabbit_xcrypt(&key, &row.pt).unwrap(),
        "mavshield" => {
            let nonce = Nonce64::from_hex(&row.nonce_or_iv).unwrap();
            MavShield::new(&key, nonce).unwrap().encrypt(&block(&row.pt)).to_vec()
        }
        other => panic!("unknown fixture suite {other}"),
    }
}
