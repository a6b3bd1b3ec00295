#!/usr/bin/env python3
"""Generate the two cloud-controller WSDL fixtures (24 and 26 operations).

The files are committed; rerun this only when the shape needs to change:
    python3 tools/gen_eucalyptus.py tests/fixtures
"""
import sys
from pathlib import Path

V1_OPS = [
    "RunInstances", "TerminateInstances", "DescribeInstances", "RebootInstances",
    "StartInstances", "StopInstances", "CreateVolume", "DeleteVolume",
    "AttachVolume", "DetachVolume", "DescribeVolumes", "CreateSnapshot",
    "DeleteSnapshot", "DescribeSnapshots", "AllocateAddress", "ReleaseAddress",
    "AssociateAddress", "DisassociateAddress", "CreateKeyPair", "DeleteKeyPair",
    "DescribeKeyPairs", "CreateSecurityGroup", "DeleteSecurityGroup",
    "DescribeSecurityGroups",
]
V2_OPS = V1_OPS + ["DescribeSensors", "BundleRestartInstance"]

TNS = "http://cloud.example.org/"


def wsdl(ops):
    out = []
    out.append('<?xml version="1.0" encoding="UTF-8"?>')
    out.append('<definitions name="CloudController"')
    out.append(f'    targetNamespace="{TNS}"')
    out.append('    xmlns="http://schemas.xmlsoap.org/wsdl/"')
    out.append('    xmlns:soap="http://schemas.xmlsoap.org/wsdl/soap/"')
    out.append('    xmlns:xsd="http://www.w3.org/2001/XMLSchema"')
    out.append(f'    xmlns:tns="{TNS}">')
    out.append('  <types>')
    out.append(f'    <xsd:schema targetNamespace="{TNS}" elementFormDefault="qualified">')
    for op in ops:
        out.append(f'      <xsd:element name="{op}" type="tns:{op}Type"/>')
        out.append(f'      <xsd:element name="{op}Response" type="tns:{op}ResponseType"/>')
    for op in ops:
        out.append(f'      <xsd:complexType name="{op}Type">')
        out.append('        <xsd:sequence>')
        out.append('          <xsd:element name="requestId" type="xsd:string"/>')
        out.append('        </xsd:sequence>')
        out.append('      </xsd:complexType>')
        out.append(f'      <xsd:complexType name="{op}ResponseType">')
        out.append('        <xsd:sequence>')
        out.append('          <xsd:element name="result" type="xsd:string"/>')
        out.append('        </xsd:sequence>')
        out.append('      </xsd:complexType>')
    out.append('    </xsd:schema>')
    out.append('  </types>')
    for op in ops:
        out.append(f'  <message name="{op}In">')
        out.append(f'    <part name="parameters" element="tns:{op}"/>')
        out.append('  </message>')
        out.append(f'  <message name="{op}Out">')
        out.append(f'    <part name="parameters" element="tns:{op}Response"/>')
        out.append('  </message>')
    out.append('  <portType name="CloudPortType">')
    for op in ops:
        out.append(f'    <operation name="{op}">')
        out.append(f'      <input message="tns:{op}In"/>')
        out.append(f'      <output message="tns:{op}Out"/>')
        out.append('    </operation>')
    out.append('  </portType>')
    out.append('  <binding name="CloudSoapBinding" type="tns:CloudPortType">')
    out.append('    <soap:binding transport="http://schemas.xmlsoap.org/soap/http" style="document"/>')
    for op in ops:
        out.append(f'    <operation name="{op}">')
        out.append(f'      <soap:operation soapAction="{TNS}{op}"/>')
        out.append('      <input><soap:body use="literal"/></input>')
        out.append('      <output><soap:body use="literal"/></output>')
        out.append('    </operation>')
    out.append('  </binding>')
    out.append('  <service name="CloudController">')
    out.append('    <port name="CloudPort" binding="tns:CloudSoapBinding">')
    out.append(f'      <soap:address location="{TNS}service"/>')
    out.append('    </port>')
    out.append('  </service>')
    out.append('</definitions>')
    return "\n".join(out) + "\n"


def main():
    dest = Path(sys.argv[1] if len(sys.argv) > 1 else "tests/fixtures")
    (dest / "eucalyptus_v1.wsdl").write_text(wsdl(V1_OPS))
    (dest / "eucalyptus_v2.wsdl").write_text(wsdl(V2_OPS))
    print(f"wrote {dest}/eucalyptus_v1.wsdl ({len(V1_OPS)} ops) and "
          f"eucalyptus_v2.wsdl ({len(V2_OPS)} ops)")


if __name__ == "__main__":
    main()
