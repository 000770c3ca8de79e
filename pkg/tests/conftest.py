import pytest

from dcaq.model import (Command, Component, DooclDescriptor, HardwareProfile, LocalEnvironment,
                        NetworkProfile, Organization, RemoteEnvironment, Scenario, UniformRate)


@pytest.fixture
def ill1_scenario():
    return Scenario(
        doocl=DooclDescriptor(Organization.SORTED_SEQUENTIAL_LIST, 16, 0.3, 5, True),
        environment=LocalEnvironment(HardwareProfile(0.05, 0.9, 20, 100)),
        command=Command("retrcomp", 8),
        component=Component("C", 16, 32, 8),
    )


def make_ill2(override=3.0, network=None):
    server = HardwareProfile(0.2, 0.92, 10, 90)
    client = HardwareProfile(0.05, 0.92, 10, 90)
    return Scenario(
        doocl=DooclDescriptor(Organization.BALANCED_BINARY_TREE, 4, 0.15, 100, True),
        environment=RemoteEnvironment(client, server, network or NetworkProfile.fixed(0.1)),
        command=Command("retrievecompsrvr", 8),
        component=Component("C", 16, 32, 8),
        explicit_ts_override=override,
    )


@pytest.fixture
def ill2_scenario():
    return make_ill2()


@pytest.fixture
def ill2_uniform():
    return make_ill2(network=NetworkProfile(UniformRate(0.05, 0.15)))
