use mavshield::cipher::chacha20::{chacha20_block, chacha20_xcrypt_in_place, ChaChaState};
use mavshield::cipher::rabbit::RabbitState;
use mavshield::cipher::speck::{Speck128, SpeckVariant};
use mavshield::cipher::{build_cipher, ctr_xcrypt};
use mavshield::harness::SeededStream;
use mavshield::{CipherKey, CipherSuite, CounterBlock128, Nonce64};

fn random_key(rng: &mut SeededStream, len: usize) -> CipherKey {
    let mut key = vec![0u8; len];
    rng.fill_bytes(&mut key);
    CipherKey::new(key)
}

#[test]
fn ctr_round_trip_and_keystream_independence() {
    let mut rng = SeededStream::new(31);
    for suite in CipherSuite::ALL {
        let cipher = build_cipher(suite, &random_key(&mut rng, suite.key_len()), Nonce64(rng.next_u64())).unwrap();
        let mut lengths: Vec<usize> = (0..=300).collect();
        lengths.extend((301..=4096).step_by(97));
        lengths.push(4096);
        for len in lengths {
            let iv = CounterBlock128(rng.bytes());
            let mut msg = vec![0u8; len];
            rng.fill_bytes(&mut msg);
            let mut ct = msg.clone();
            cipher.xcrypt(&iv, &mut ct);
            assert_eq!(ct.len(), len);

            let mut keystream = vec![0u8; len];
            cipher.xcrypt(&iv, &mut keystream);
            let xored: Vec<u8> = ct.iter().zip(&msg).map(|(c, m)| c ^ m).collect();
            assert_eq!(xored, keystream, "{suite} len {len}");

            cipher.xcrypt(&iv, &mut ct);
            assert_eq!(ct, msg, "{suite} len {len}");
        }
    }
}

#[test]
fn ctr_counter_wraps_big_endian() {
    let key = CipherKey::new(vec![7u8; 16]);
    let cipher = mavshield::cipher::aes::Aes128::from_key(&key).unwrap();
    let iv = CounterBlock128([0xff; 16]);
    let mut data = [0u8; 32];
    ctr_xcrypt(&cipher, &iv, &mut data);
    assert_eq!(data[..16], cipher.encrypt(&[0xff; 16]));
    assert_eq!(data[16..], cipher.encrypt(&[0; 16]));
}

#[test]
fn speck_round_trip_per_variant() {
    let mut rng = SeededStream::new(32);
    for variant in [SpeckVariant::SPECK128_128, SpeckVariant::SPECK128_192, SpeckVariant::SPECK128_256] {
        let speck = Speck128::new(variant, &random_key(&mut rng, variant.key_bits as usize / 8)).unwrap();
        for _ in 0..10_000 {
            let block: [u8; 16] = rng.bytes();
            assert_eq!(speck.decrypt(&speck.encrypt(&block)), block);
        }
        assert!(Speck128::new(variant, &random_key(&mut rng, 8)).is_err());
    }
}

fn inverse_quarter_round(s: &mut [u32; 16], (a, b, c, d): (usize, usize, usize, usize)) {
    s[b] = s[b].rotate_right(7) ^ s[c];
    s[c] = s[c].wrapping_sub(s[d]);
    s[d] = s[d].rotate_right(8) ^ s[a];
    s[a] = s[a].wrapping_sub(s[b]);
    s[b] = s[b].rotate_right(12) ^ s[c];
    s[c] = s[c].wrapping_sub(s[d]);
    s[d] = s[d].rotate_right(16) ^ s[a];
    s[a] = s[a].wrapping_sub(s[b]);
}

#[test]
fn quarter_round_is_invertible() {
    let mut rng = SeededStream::new(33);
    for _ in 0..10_000 {
        let words: [u32; 16] = std::array::from_fn(|_| rng.next_u32());
        let idx = (0, 4, 8, 12);
        let mut state = ChaChaState(words);
        state.quarter_round(idx);
        inverse_quarter_round(&mut state.0, idx);
        assert_eq!(state.0, words);
    }
    let mut zero = ChaChaState([0; 16]);
    zero.quarter_round((0, 1, 2, 3));
    zero.quarter_round((0, 1, 2, 3));
    assert_eq!(zero.0, [0; 16]);
}

#[test]
fn chacha_counter_advances_per_block() {
    let mut rng = SeededStream::new(34);
    let key: [u8; 32] = rng.bytes();
    let nonce: [u8; 12] = rng.bytes();
    let counter = u32::MAX;
    let mut data = [0u8; 128];
    chacha20_xcrypt_in_place(&key, &nonce, counter, &mut data);
    assert_eq!(data[..64], chacha20_block(&key, &nonce, counter));
    assert_eq!(data[64..], chacha20_block(&key, &nonce, 0));
}

#[test]
fn rabbit_setup_depends_on_every_key_bit() {
    let mut rng = SeededStream::new(35);
    for _ in 0..1000 {
        let key: [u8; 16] = rng.bytes();
        let bit = rng.below(128) as usize;
        let mut other = key;
        other[bit / 8] ^= 1 << (bit % 8);
        assert_ne!(RabbitState::key_setup(&key), RabbitState::key_setup(&other));
    }
}

#[test]
fn rabbit_state_is_513_bits() {
    // Eight state words, eight counters and a one-bit carry.
    assert_eq!(std::mem::size_of::<RabbitState>(), 4 * (8 + 8 + 1));
    let mut state = RabbitState::key_setup(&[0xa5; 16]);
    for _ in 0..10_000 {
        state.next_state();
        assert!(state.carry <= 1);
    }
}
