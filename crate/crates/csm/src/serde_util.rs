//! Partitions as integer arrays, big integers as decimal strings.

pub(crate) mod partition {
    use csm_core::Partition;
    use serde::{de::Error, Deserialize, Deserializer, Serializer};

    pub(crate) fn serialize<S: Serializer>(p: &Partition, s: S) -> Result<S::Ok, S::Error> {
        s.collect_seq(p.parts())
    }

    pub(crate) fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Partition, D::Error> {
        let parts = Vec::<u32>::deserialize(d)?;
        Partition::new(parts).map_err(D::Error::custom)
    }
}

pub(crate) mod opt_partition {
    use csm_core::Partition;
    use serde::{de::Error, Deserialize, Deserializer, Serializer};

    pub(crate) fn serialize<S: Serializer>(p: &Option<Partition>, s: S) -> Result<S::Ok, S::Error> {
        match p {
            Some(p) => s.collect_seq(p.parts()),
            None => s.serialize_none(),
        }
    }

    pub(crate) fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Option<Partition>, D::Error> {
        Option::<Vec<u32>>::deserialize(d)?.map(|parts| Partition::new(parts).map_err(D::Error::custom)).transpose()
    }
}

pub(crate) mod bigint {
    use num_bigint::BigInt;
    use serde::{de::Error, Deserialize, Deserializer, Serializer};

    pub(crate) fn serialize<S: Serializer>(v: &BigInt, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(v)
    }

    pub(crate) fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<BigInt, D::Error> {
        let text = String::deserialize(d)?;
        text.parse().map_err(|_| D::Error::custom(format!("not a decimal integer: {text:?}")))
    }
}

pub(crate) mod opt_bigint {
    use num_bigint::BigInt;
    use serde::{de::Error, Deserialize, Deserializer, Serializer};

    pub(crate) fn serialize<S: Serializer>(v: &Option<BigInt>, s: S) -> Result<S::Ok, S::Error> {
        match v {
            Some(v) => s.collect_str(v),
            None => s.serialize_none(),
        }
    }

    pub(crate) fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Option<BigInt>, D::Error> {
        Option::<String>::deserialize(d)?
            .map(|text| text.parse().map_err(|_| D::Error::custom(format!("not a decimal integer: {text:?}"))))
            .transpose()
    }
}
